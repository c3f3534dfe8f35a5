#include "dillonlab/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

namespace dillonlab {

namespace {

// Distinct row differences of D_alpha, each with the first x attaining it.
std::vector<std::pair<u32, u32>> row_support(const std::vector<u32>& table, u64 dom, u32 alpha) {
  std::vector<std::pair<u32, u32>> entries;
  entries.reserve(dom);
  for (u64 x = 0; x < dom; ++x)
    entries.emplace_back(table[x] ^ table[x ^ alpha], static_cast<u32>(x));
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const auto& l, const auto& r) { return l.first == r.first; }),
                entries.end());
  return entries;
}

void ddt_row_into(ScanResult& out, const std::vector<u32>& table, u64 dom, u32 alpha,
                  bool witnesses) {
  const auto support = row_support(table, dom, alpha);
  for (size_t i = 0; i < support.size(); ++i) {
    for (size_t j = i; j < support.size(); ++j) {
      const u32 val = support[i].first ^ support[j].first;
      if (out.coverage.add(val) && witnesses) {
        // b1 + b2 = D_alpha F(x_i) + D_alpha F(x_j) = D^2_{alpha, x_i^x_j} F(x_i)
        out.witnesses.emplace(val, DWitness{alpha, support[i].second ^ support[j].second,
                                            support[i].second});
      }
    }
    out.steps += support.size() - i;
  }
}

}  // namespace

ScanResult scan_pairs_serial(const std::vector<u32>& g, unsigned n, unsigned m,
                             std::span<const u32> alphas, bool witnesses) {
  ScanResult out{Coverage(m), {}, 0};
  const u64 dom = u64{1} << n;
  for (u32 alpha : alphas) {
    const u32 ga = g[alpha];
    for (u64 b = 0; b < dom; ++b) {
      const u32 val = ga ^ g[b] ^ g[alpha ^ b];
      if (out.coverage.add(val) && witnesses)
        out.witnesses.emplace(val, DWitness{alpha, static_cast<u32>(b), 0});
    }
    out.steps += dom;
    if (out.coverage.full()) break;
  }
  return out;
}

ScanResult scan_pairs_parallel(const std::vector<u32>& g, unsigned n, unsigned m,
                               std::span<const u32> alphas, int threads, bool witnesses) {
  if (threads <= 1) return scan_pairs_serial(g, n, m, alphas, witnesses);
  ScanResult out{Coverage(m), {}, 0};
  const u64 dom = u64{1} << n;
  std::atomic<bool> done{false};
  const long count = static_cast<long>(alphas.size());
#pragma omp parallel num_threads(threads)
  {
    ScanResult local{Coverage(m), {}, 0};
#pragma omp for schedule(dynamic, 16)
    for (long ai = 0; ai < count; ++ai) {
      if (done.load(std::memory_order_relaxed)) continue;
      const u32 alpha = alphas[static_cast<size_t>(ai)];
      const u32 ga = g[alpha];
      for (u64 b = 0; b < dom; ++b) {
        const u32 val = ga ^ g[b] ^ g[alpha ^ b];
        if (local.coverage.add(val) && witnesses)
          local.witnesses.emplace(val, DWitness{alpha, static_cast<u32>(b), 0});
      }
      local.steps += dom;
      if (local.coverage.full()) done.store(true, std::memory_order_relaxed);
    }
#pragma omp critical
    {
      out.coverage.merge(local.coverage);
      out.steps += local.steps;
      if (witnesses)
        for (const auto& kv : local.witnesses) out.witnesses.emplace(kv.first, kv.second);
    }
  }
  return out;
}

ScanResult scan_triples_serial(const std::vector<u32>& g, unsigned n, unsigned m, bool witnesses) {
  ScanResult out{Coverage(m), {}, 0};
  const u64 dom = u64{1} << n;
  std::vector<u32> diff(dom);
  for (u64 b = 0; b < dom; ++b) {
    for (u64 x = 0; x < dom; ++x) diff[x] = g[x] ^ g[x ^ b];
    for (u64 a2 = 0; a2 < dom; ++a2) {
      const u32 d2 = diff[a2];
      for (u64 a1 = a2; a1 < dom; ++a1) {
        const u32 val = d2 ^ diff[a1];
        if (out.coverage.add(val) && witnesses)
          out.witnesses.emplace(val, DWitness{static_cast<u32>(a1 ^ a2), static_cast<u32>(b),
                                              static_cast<u32>(a2)});
      }
      out.steps += dom - a2;
    }
    if (out.coverage.full()) break;
  }
  return out;
}

ScanResult scan_triples_parallel(const std::vector<u32>& g, unsigned n, unsigned m,
                                 int threads, bool witnesses) {
  if (threads <= 1) return scan_triples_serial(g, n, m, witnesses);
  ScanResult out{Coverage(m), {}, 0};
  const u64 dom = u64{1} << n;
  std::atomic<bool> done{false};
#pragma omp parallel num_threads(threads)
  {
    ScanResult local{Coverage(m), {}, 0};
    std::vector<u32> diff(dom);
#pragma omp for schedule(dynamic, 1)
    for (long b = 0; b < static_cast<long>(dom); ++b) {
      if (done.load(std::memory_order_relaxed)) continue;
      for (u64 x = 0; x < dom; ++x) diff[x] = g[x] ^ g[x ^ static_cast<u64>(b)];
      for (u64 a2 = 0; a2 < dom; ++a2) {
        const u32 d2 = diff[a2];
        for (u64 a1 = a2; a1 < dom; ++a1) {
          const u32 val = d2 ^ diff[a1];
          if (local.coverage.add(val) && witnesses)
            local.witnesses.emplace(val, DWitness{static_cast<u32>(a1 ^ a2), static_cast<u32>(b),
                                                  static_cast<u32>(a2)});
        }
        local.steps += dom - a2;
      }
      if (local.coverage.full()) done.store(true, std::memory_order_relaxed);
    }
#pragma omp critical
    {
      out.coverage.merge(local.coverage);
      out.steps += local.steps;
      if (witnesses)
        for (const auto& kv : local.witnesses) out.witnesses.emplace(kv.first, kv.second);
    }
  }
  return out;
}

ScanResult scan_ddt_serial(const std::vector<u32>& table, unsigned n, unsigned m, bool witnesses) {
  ScanResult out{Coverage(m), {}, 0};
  const u64 dom = u64{1} << n;
  out.coverage.add(0);  // b1 = b2 column pair
  if (witnesses) out.witnesses.emplace(0, DWitness{0, 0, 0});
  for (u64 alpha = 1; alpha < dom; ++alpha) {
    ddt_row_into(out, table, dom, static_cast<u32>(alpha), witnesses);
    if (out.coverage.full()) break;
  }
  return out;
}

ScanResult scan_ddt_parallel(const std::vector<u32>& table, unsigned n, unsigned m,
                             int threads, bool witnesses) {
  if (threads <= 1) return scan_ddt_serial(table, n, m, witnesses);
  ScanResult out{Coverage(m), {}, 0};
  const u64 dom = u64{1} << n;
  out.coverage.add(0);
  if (witnesses) out.witnesses.emplace(0, DWitness{0, 0, 0});
  std::atomic<bool> done{false};
#pragma omp parallel num_threads(threads)
  {
    ScanResult local{Coverage(m), {}, 0};
#pragma omp for schedule(dynamic, 4)
    for (long alpha = 1; alpha < static_cast<long>(dom); ++alpha) {
      if (done.load(std::memory_order_relaxed)) continue;
      ddt_row_into(local, table, dom, static_cast<u32>(alpha), witnesses);
      if (local.coverage.full()) done.store(true, std::memory_order_relaxed);
    }
#pragma omp critical
    {
      out.coverage.merge(local.coverage);
      out.steps += local.steps;
      if (witnesses)
        for (const auto& kv : local.witnesses) out.witnesses.emplace(kv.first, kv.second);
    }
  }
  return out;
}

namespace {

i128 component_moment(const VBF& f, u32 v, unsigned k, std::vector<i64>& scratch) {
  const u64 dom = f.domain();
  for (u64 x = 0; x < dom; ++x) scratch[x] = dot(v, f.table[x]) ? -1 : 1;
  hadamard_inplace(scratch);
  i128 acc = 0;
  for (u64 u = 0; u < dom; ++u) {
    const i128 w = scratch[u];
    acc += (k == 3) ? w * w * w : (w * w) * (w * w);
  }
  return acc;
}

}  // namespace

std::vector<i128> walsh_moment_vector_serial(const VBF& f, unsigned k) {
  if (k != 3 && k != 4) throw error(errc::invalid_arguments, "walsh moment order must be 3 or 4");
  std::vector<i128> h(u64{1} << f.m);
  std::vector<i64> scratch(f.domain());
  for (u64 v = 0; v < h.size(); ++v)
    h[v] = component_moment(f, static_cast<u32>(v), k, scratch);
  return h;
}

std::vector<i128> walsh_moment_vector(const VBF& f, unsigned k, int threads) {
  if (threads <= 1) return walsh_moment_vector_serial(f, k);
  if (k != 3 && k != 4) throw error(errc::invalid_arguments, "walsh moment order must be 3 or 4");
  std::vector<i128> h(u64{1} << f.m);
#pragma omp parallel num_threads(threads)
  {
    std::vector<i64> scratch(f.domain());
#pragma omp for schedule(dynamic, 8)
    for (long v = 0; v < static_cast<long>(h.size()); ++v)
      h[static_cast<size_t>(v)] = component_moment(f, static_cast<u32>(v), k, scratch);
  }
  return h;
}

namespace {

// Per-row max DDT entry; with stop_above set, returns early once exceeded.
unsigned row_max_count(const VBF& f, u32 alpha, std::vector<u32>& counts, unsigned stop_above) {
  const u64 dom = f.domain();
  unsigned best = 0;
  if (!counts.empty()) {
    std::fill(counts.begin(), counts.end(), 0);
    for (u64 x = 0; x < dom; ++x) {
      const unsigned c = ++counts[f.table[x] ^ f.table[x ^ alpha]];
      if (c > best) {
        best = c;
        if (stop_above && best > stop_above) return best;
      }
    }
  } else {
    // Wide outputs: count multiplicities by sorting instead of a 2^m array.
    std::vector<u32> diffs(dom);
    for (u64 x = 0; x < dom; ++x) diffs[x] = f.table[x] ^ f.table[x ^ alpha];
    std::sort(diffs.begin(), diffs.end());
    unsigned run = 1;
    for (u64 x = 1; x < dom; ++x) {
      run = (diffs[x] == diffs[x - 1]) ? run + 1 : 1;
      if (run > best) best = run;
    }
  }
  return best;
}

unsigned uniformity_impl(const VBF& f, int threads, unsigned stop_above) {
  const u64 dom = f.domain();
  const bool dense = f.m <= 24;
  unsigned global_best = 0;
  if (threads <= 1) {
    std::vector<u32> counts(dense ? (u64{1} << f.m) : 0, 0);
    for (u64 alpha = 1; alpha < dom; ++alpha) {
      global_best = std::max(global_best, row_max_count(f, static_cast<u32>(alpha), counts, stop_above));
      if (stop_above && global_best > stop_above) break;
    }
    return global_best;
  }
  std::atomic<bool> done{false};
#pragma omp parallel num_threads(threads)
  {
    std::vector<u32> counts(dense ? (u64{1} << f.m) : 0, 0);
    unsigned local_best = 0;
#pragma omp for schedule(dynamic, 16)
    for (long alpha = 1; alpha < static_cast<long>(dom); ++alpha) {
      if (done.load(std::memory_order_relaxed)) continue;
      local_best = std::max(local_best, row_max_count(f, static_cast<u32>(alpha), counts, stop_above));
      if (stop_above && local_best > stop_above) done.store(true, std::memory_order_relaxed);
    }
#pragma omp critical
    global_best = std::max(global_best, local_best);
  }
  return global_best;
}

}  // namespace

unsigned differential_uniformity_serial(const VBF& f) { return uniformity_impl(f, 1, 0); }

unsigned differential_uniformity(const VBF& f, int threads) { return uniformity_impl(f, threads, 0); }

bool is_apn(const VBF& f, int threads) { return uniformity_impl(f, threads, 2) == 2; }

}  // namespace dillonlab
