#pragma once

#include <map>
#include <span>
#include <vector>

#include "dillonlab/common.hpp"
#include "dillonlab/vbf.hpp"

namespace dillonlab {

/// Replayable witness for a covered value: the value equals
/// second_derivative(g, a, b, x) on the normalized function g.
struct DWitness {
  u32 a = 0;
  u32 b = 0;
  u32 x = 0;
};

struct ScanResult {
  Coverage coverage;
  std::map<u32, DWitness> witnesses;
  u64 steps = 0;
};

// Each scan exists in two forms: a serial reference implementation with exact
// early exit and deterministic first witnesses, and an OpenMP variant that
// partitions the scan space into independent blocks whose coverage bitsets
// merge by union. Early exit in the parallel form is cooperative and
// best-effort; verdicts and missing sets are identical either way.

/// Coverage of { g[a] ^ g[b] ^ g[a^b] : a in alphas, b in F_2^n }.
/// With g normalized this is the set of second derivatives at 0.
ScanResult scan_pairs_serial(const std::vector<u32>& g, unsigned n, unsigned m,
                             std::span<const u32> alphas, bool witnesses);
ScanResult scan_pairs_parallel(const std::vector<u32>& g, unsigned n, unsigned m,
                               std::span<const u32> alphas, int threads, bool witnesses);

/// Coverage of { D_b g(a1) ^ D_b g(a2) : a1, a2, b in F_2^n }, the general
/// (non-quadratic) sum-of-two-second-derivatives scan.
ScanResult scan_triples_serial(const std::vector<u32>& g, unsigned n, unsigned m, bool witnesses);
ScanResult scan_triples_parallel(const std::vector<u32>& g, unsigned n, unsigned m,
                                 int threads, bool witnesses);

/// Coverage of the union over rows alpha != 0 of pairwise XORs of the row
/// support { b : DDT(alpha, b) != 0 }.
ScanResult scan_ddt_serial(const std::vector<u32>& table, unsigned n, unsigned m, bool witnesses);
ScanResult scan_ddt_parallel(const std::vector<u32>& table, unsigned n, unsigned m,
                             int threads, bool witnesses);

/// H_k[v] = sum_u W_F(u,v)^k for every v in F_2^m (k = 3 or 4).
std::vector<i128> walsh_moment_vector_serial(const VBF& f, unsigned k);
std::vector<i128> walsh_moment_vector(const VBF& f, unsigned k, int threads);

/// Max DDT entry over all rows; is_apn stops a row early once an entry
/// exceeds 2.
unsigned differential_uniformity_serial(const VBF& f);
unsigned differential_uniformity(const VBF& f, int threads);
bool is_apn(const VBF& f, int threads = 1);

}  // namespace dillonlab
