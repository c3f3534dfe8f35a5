#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dillonlab/spectra.hpp"

namespace dillonlab {

enum class DMethod {
  bruteforce,
  ddt,
  moment4,
  moment3_quadratic,
  hyperplane_quadratic,
  anf_span,
  plateaued,
};

const char* method_name(DMethod m);
std::optional<DMethod> method_from_name(const std::string& s);

/// Verdict of one D-property check. The verdict is D-function exactly when
/// covered = 2^m, i.e. the missing list is empty. Witnesses, when requested
/// and supported by the method, replay through second_derivative on the
/// normalized function.
struct DReport {
  unsigned n = 0;
  unsigned m = 0;
  DMethod method = DMethod::bruteforce;
  bool is_d_function = false;
  u64 covered = 0;
  u64 missing_total = 0;
  std::vector<u32> missing;  // ascending; truncated to 32 unless full_missing
  bool missing_truncated = false;
  std::map<u32, DWitness> witnesses;
  std::string runtime_note;
  std::string provenance;
  std::optional<u64> field_modulus;
  int threads = 1;
  double elapsed_ms = 0.0;
};

struct DCheckOptions {
  bool witnesses = false;
  bool full_missing = false;
  int threads = 1;
};

/// Scans second derivatives at the origin: all (a, b) pairs for quadratic
/// functions, the general sum-of-two form over (a1, a2, b) otherwise.
/// Refuses non-quadratic inputs whose triple scan would exceed the size
/// guard (default 2^30 steps), suggesting the ddt or moment4 method.
DReport d_check_bruteforce(const VBF& f, const DCheckOptions& opts = {});

/// Union over DDT rows of pairwise XORs of each row's support columns.
DReport d_check_ddt(const VBF& f, const DCheckOptions& opts = {});

/// Fourth-moment route: Fourier-Hadamard transform of H4(v) = sum_u W^4(u,v)
/// must be strictly positive at every b != 0. Guarded at n+m <= 28.
DReport d_check_moment4(const VBF& f, const DCheckOptions& opts = {},
                        const std::optional<std::vector<u32>>& b_filter = std::nullopt);

/// Third-moment route for quadratic functions (normalizes internally).
DReport d_check_moment3_quadratic(const VBF& f, const DCheckOptions& opts = {});

/// Quadratic simplification: alpha may range over a single hyperplane K
/// (default: span of the first n-1 unit vectors) while beta stays free.
DReport d_check_hyperplane_quadratic(const VBF& f, const DCheckOptions& opts = {},
                                     const SubspaceBasis* k_basis = nullptr);

/// ANF route: union over J of the span of the generators
/// g_i = sum over j in J\{i} of a_ij must cover F_2^m. Guarded at n <= 20.
DReport d_check_anf_span(const QuadraticAnf& anf, const DCheckOptions& opts = {});

/// Plateaued route: the transform of Lambda (lambda_v^2, with 2^(2n) at v=0)
/// must be strictly positive at every w. Requires a plateaued function.
DReport d_check_plateaued(const VBF& f, const DCheckOptions& opts = {});

/// Convenience router: hyperplane-quadratic for quadratic functions,
/// bruteforce for tiny non-quadratic inputs, ddt otherwise.
DReport check_d(const VBF& f, const DCheckOptions& opts = {});

/// Index-pair set closed under (i,j),(l,k) in I, i != k => (i,k) in I.
/// Indices are 1-based as in the a_ij coefficient naming.
struct UltraTransitiveSet {
  unsigned n = 0;
  std::set<std::pair<unsigned, unsigned>> pairs;

  bool is_ultra_transitive() const;
  /// Drops the symmetric pairs {(i,j),(j,i)} fully contained in the set.
  std::set<std::pair<unsigned, unsigned>> reduced() const;

  static UltraTransitiveSet from_directions(unsigned n, u32 alpha1, u32 alpha2);
};

u32 reduced_coefficient_sum(const QuadraticAnf& anf, const UltraTransitiveSet& I);

struct ApnAnfResult {
  bool apn = false;
  std::optional<UltraTransitiveSet> counterexample;
  u32 alpha1 = 0;  // directions behind the counterexample, when present
  u32 alpha2 = 0;
};

/// APN test on the ANF: for every nonzero alpha, the kernel of
/// beta -> D^2_{alpha,beta}F(0) must be exactly {0, alpha}.
ApnAnfResult apn_check_anf(const QuadraticAnf& anf);

/// Strongly-plateaued criterion for APN (n, n+1)-restrictions, n even:
/// D-function iff |Omega_w| > (2^n - 1)/3 for every w, with Omega_w the
/// non-bent components orthogonal to w. Verifies the structural facts the
/// criterion rests on and reports them.
struct OmegaReport {
  unsigned n = 0;
  unsigned m = 0;
  bool is_d_function = false;
  std::vector<u64> omega_sizes;  // indexed by w
  u64 min_omega = 0;
  u32 argmin_w = 0;
  size_t bent_count = 0;
  size_t nonbent_count = 0;
};

OmegaReport omega_report(const VBF& f, int threads = 1);

/// Admissible output dimensions for an APN D-function: m_min = n and the
/// inclusive upper bound (general combinatorial bound, or 2n-3 for
/// quadratic functions).
struct DimensionBounds {
  unsigned m_min = 0;
  unsigned m_max = 0;
};

DimensionBounds dimension_bounds(unsigned n, bool quadratic);

/// counts[w] = |{ x : F(x)+F(x+gamma)+F(x+eta)+F(x+gamma+eta) = w }|.
std::vector<u64> second_order_spectrum(const VBF& f, u32 gamma, u32 eta);

/// Exact integer verification of the three moment/spectrum identities.
struct MomentIdentityReport {
  struct Item {
    std::string name;
    bool applicable = false;
    std::string skip_reason;
    bool holds = false;
    u32 first_mismatch = 0;
    std::string lhs;  // at the first mismatch (decimal, may exceed 64 bits)
    std::string rhs;
  };
  Item fourth_moment;
  Item third_moment_quadratic;
  Item plateaued_amplitudes;

  bool all_applicable_hold() const;
};

MomentIdentityReport verify_moment_identities(
    const VBF& f, const std::optional<std::vector<u32>>& sample = std::nullopt, int threads = 1);

}  // namespace dillonlab
