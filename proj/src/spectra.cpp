#include "dillonlab/spectra.hpp"

#include <omp.h>

#include <algorithm>

namespace dillonlab {

WalshRow walsh_row(const VBF& f, u32 v) {
  WalshRow row;
  row.v = v;
  row.values.resize(f.domain());
  for (u64 x = 0; x < f.domain(); ++x) row.values[x] = dot(v, f.table[x]) ? -1 : 1;
  hadamard_inplace(row.values);
  return row;
}

DdtRow ddt_row(const VBF& f, u32 a) {
  if (a == 0) throw error(errc::invalid_arguments, "DDT row requires a != 0");
  if (f.m > 28) throw error(errc::size_limit, "dense DDT row not materializable for m > 28");
  DdtRow row;
  row.a = a;
  row.counts.assign(u64{1} << f.m, 0);
  for (u64 x = 0; x < f.domain(); ++x) ++row.counts[f.table[x] ^ f.table[x ^ a]];
  return row;
}

i64 nonlinearity(const VBF& f, int threads) {
  const u64 comps = u64{1} << f.m;
  i64 best = 0;
  if (threads <= 1) {
    for (u64 v = 1; v < comps; ++v) {
      const WalshRow row = walsh_row(f, static_cast<u32>(v));
      for (i64 w : row.values) best = std::max(best, w < 0 ? -w : w);
    }
  } else {
#pragma omp parallel num_threads(threads)
    {
      i64 local = 0;
#pragma omp for schedule(dynamic, 8)
      for (long v = 1; v < static_cast<long>(comps); ++v) {
        const WalshRow row = walsh_row(f, static_cast<u32>(v));
        for (i64 w : row.values) local = std::max(local, w < 0 ? -w : w);
      }
#pragma omp critical
      best = std::max(best, local);
    }
  }
  return (i64{1} << (f.n - 1)) - best / 2;
}

namespace {

struct ComponentInfo {
  std::optional<i64> amplitude;
  unsigned ell = 0;
  bool partially_bent = false;
};

std::optional<i64> component_amplitude(const VBF& f, u32 v, std::vector<i64>& scratch) {
  const u64 dom = f.domain();
  for (u64 x = 0; x < dom; ++x) scratch[x] = dot(v, f.table[x]) ? -1 : 1;
  hadamard_inplace(scratch);
  i64 lambda = 0;
  for (u64 u = 0; u < dom; ++u) {
    const i64 a = scratch[u] < 0 ? -scratch[u] : scratch[u];
    if (a == 0) continue;
    if (lambda == 0)
      lambda = a;
    else if (a != lambda)
      return std::nullopt;
  }
  if (lambda == 0) throw error(errc::internal, "all-zero Walsh row contradicts Parseval");
  return lambda;
}

// Classify every derivative of the component v.F as constant / balanced /
// neither; V(v) is the set of constant directions.
void component_structure(const VBF& f, u32 v, ComponentInfo& info) {
  const u64 dom = f.domain();
  u64 constant_dirs = 0;
  bool all_nice = true;
  for (u64 a = 0; a < dom; ++a) {
    const u32 first = dot(v, f.table[0] ^ f.table[a]);
    bool constant = true;
    u64 ones = 0;
    for (u64 x = 0; x < dom; ++x) {
      const u32 d = dot(v, f.table[x] ^ f.table[x ^ a]);
      ones += d;
      if (d != first) constant = false;
    }
    if (constant)
      ++constant_dirs;
    else if (ones != dom / 2)
      all_nice = false;
  }
  if ((constant_dirs & (constant_dirs - 1)) != 0)
    throw error(errc::internal, "linear structure set is not a subspace");
  info.ell = static_cast<unsigned>(std::countr_zero(constant_dirs));
  info.partially_bent = all_nice;
}

}  // namespace

bool PlateauedProfile::strongly_plateaued() const {
  if (!has_structure) throw error(errc::precondition, "profile was computed without structure data");
  for (u64 v = 1; v < partially_bent.size(); ++v)
    if (!partially_bent[v]) return false;
  return true;
}

PlateauedProfile plateaued_profile(const VBF& f, bool with_structure, int threads) {
  PlateauedProfile p;
  p.n = f.n;
  p.m = f.m;
  p.has_structure = with_structure;
  const u64 comps = u64{1} << f.m;
  p.amplitude.resize(comps);
  if (with_structure) {
    p.structure_dim.assign(comps, 0);
    p.partially_bent.assign(comps, false);
  }
  std::vector<ComponentInfo> info(comps);

  if (threads <= 1) {
    std::vector<i64> scratch(f.domain());
    for (u64 v = 1; v < comps; ++v) {
      info[v].amplitude = component_amplitude(f, static_cast<u32>(v), scratch);
      if (with_structure) component_structure(f, static_cast<u32>(v), info[v]);
    }
  } else {
#pragma omp parallel num_threads(threads)
    {
      std::vector<i64> scratch(f.domain());
#pragma omp for schedule(dynamic, 4)
      for (long v = 1; v < static_cast<long>(comps); ++v) {
        info[v].amplitude = component_amplitude(f, static_cast<u32>(v), scratch);
        if (with_structure) component_structure(f, static_cast<u32>(v), info[v]);
      }
    }
  }

  p.is_plateaued = true;
  const i64 bent_sq = i64{1} << f.n;  // lambda^2 = 2^n means no zero Walsh values
  for (u64 v = 1; v < comps; ++v) {
    p.amplitude[v] = info[v].amplitude;
    if (!info[v].amplitude) {
      p.is_plateaued = false;
    } else if (*info[v].amplitude * *info[v].amplitude == bent_sq) {
      ++p.bent_set_size;
    }
    if (with_structure) {
      p.structure_dim[v] = info[v].ell;
      p.partially_bent[v] = info[v].partially_bent;
      const bool bent = info[v].amplitude && *info[v].amplitude * *info[v].amplitude == bent_sq;
      if (!bent) p.nonbent_set.push_back(static_cast<u32>(v));
    }
  }
  return p;
}

std::vector<u32> delta_set(const VBF& f, u32 a) {
  // v has a as a linear structure iff v is orthogonal to every
  // D_a F(x) + D_a F(0); collect that span and enumerate its orthocomplement.
  F2Span span;
  const u32 d0 = f.table[0] ^ f.table[a];
  for (u64 x = 0; x < f.domain(); ++x)
    span.insert(f.table[x] ^ f.table[x ^ a] ^ d0);
  const std::vector<u32> basis = f2_nullspace(span.rows(), f.m);
  std::vector<u32> out = f2_span_points(basis);
  std::sort(out.begin(), out.end());
  return out;
}

u64 affine_plane_count(unsigned n) {
  const u128 N = u128{1} << n;
  const u128 count = N * (N - 1) * (N / 2 - 1) / 12;
  if (count > ~u64{0}) throw error(errc::size_limit, "affine plane count exceeds 64 bits");
  return static_cast<u64>(count);
}

u64 vector_plane_count(unsigned n) {
  const u64 N = u64{1} << n;
  return (N - 1) * (N / 2 - 1) / 3;
}

PhiImage phi_image(const VBF& f, PlaneKind kind) {
  PhiImage out;
  Coverage seen(f.m);
  const u64 dom = f.domain();
  if (kind == PlaneKind::affine) {
    // Canonical representative: the three smallest points a < b < c with the
    // fourth point d = a^b^c above c; every plane is counted exactly once.
    for (u64 a = 0; a < dom; ++a) {
      for (u64 b = a + 1; b < dom; ++b) {
        for (u64 c = b + 1; c < dom; ++c) {
          const u64 d = a ^ b ^ c;
          if (d <= c) continue;
          ++out.plane_count;
          const u32 val = f.table[a] ^ f.table[b] ^ f.table[c] ^ f.table[d];
          if (seen.add(val))
            out.witnesses.emplace(val, std::array<u32, 4>{static_cast<u32>(a), static_cast<u32>(b),
                                                          static_cast<u32>(c), static_cast<u32>(d)});
        }
      }
    }
  } else {
    // {0, x, y, x^y} with x < y and x^y > y: the two smallest nonzero elements.
    for (u64 x = 1; x < dom; ++x) {
      for (u64 y = x + 1; y < dom; ++y) {
        const u64 z = x ^ y;
        if (z <= y) continue;
        ++out.plane_count;
        const u32 val = f.table[0] ^ f.table[x] ^ f.table[y] ^ f.table[z];
        if (seen.add(val))
          out.witnesses.emplace(val, std::array<u32, 4>{0, static_cast<u32>(x), static_cast<u32>(y),
                                                        static_cast<u32>(z)});
      }
    }
  }
  for (const auto& kv : out.witnesses) out.values.push_back(kv.first);
  return out;
}

}  // namespace dillonlab
