// Times the OpenMP scan kernels against their serial reference
// implementations on representative workloads and prints the speedups.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "dillonlab/catalog.hpp"
#include "dillonlab/experiments.hpp"
#include "dillonlab/scan.hpp"

namespace dl = dillonlab;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s) {
  std::printf("%-36s %10.3f s %10.3f s %8.2fx\n", name, serial_s, parallel_s,
              serial_s / parallel_s);
}

dl::VBF restricted(unsigned n1) {
  dl::FamilySpec spec;
  spec.family = dl::Family::gold;
  spec.n1 = n1;
  spec.i = 1;
  spec.restriction = dl::Restriction{dl::Restriction::Kind::trace_zero, 1};
  return dl::build_function(spec).f;
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  std::printf("kernel benchmark, %d thread(s) in the parallel column\n", threads);
  std::printf("%-36s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const dl::VBF f = dl::normalize(restricted(13));
    std::vector<dl::u32> alphas(f.domain() / 2);
    for (dl::u64 a = 0; a < alphas.size(); ++a) alphas[a] = static_cast<dl::u32>(a);
    const double ts = time_of([&] { dl::scan_pairs_serial(f.table, f.n, f.m, alphas, false); });
    const double tp = time_of(
        [&] { dl::scan_pairs_parallel(f.table, f.n, f.m, alphas, threads, false); });
    row("pair scan, restricted gold(13,1)", ts, tp);
  }

  {
    const dl::VBF f = dl::normalize(dl::random_table_vbf(9, 9, 7));
    const double ts = time_of([&] { dl::scan_triples_serial(f.table, f.n, f.m, false); });
    const double tp =
        time_of([&] { dl::scan_triples_parallel(f.table, f.n, f.m, threads, false); });
    row("triple scan, random (9,9) table", ts, tp);
  }

  {
    const dl::VBF f = dl::random_table_vbf(11, 11, 9);
    const double ts = time_of([&] { dl::scan_ddt_serial(f.table, f.n, f.m, false); });
    const double tp = time_of([&] { dl::scan_ddt_parallel(f.table, f.n, f.m, threads, false); });
    row("ddt support scan, random (11,11)", ts, tp);
  }

  {
    const dl::VBF f = dl::gold(11, 1);
    const double ts = time_of([&] { dl::walsh_moment_vector_serial(f, 4); });
    const double tp = time_of([&] { dl::walsh_moment_vector(f, 4, threads); });
    row("walsh 4th moments, gold(11,1)", ts, tp);
  }

  {
    const dl::VBF f = dl::random_table_vbf(12, 12, 5);
    const double ts = time_of([&] { dl::differential_uniformity_serial(f); });
    const double tp = time_of([&] { dl::differential_uniformity(f, threads); });
    row("differential uniformity, (12,12)", ts, tp);
  }

  return 0;
}
