#include "dillonlab/dproperty.hpp"

#include <algorithm>
#include <chrono>

namespace dillonlab {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

DReport report_skeleton(unsigned n, unsigned m, DMethod method, const DCheckOptions& opts) {
  DReport r;
  r.n = n;
  r.m = m;
  r.method = method;
  r.threads = opts.threads < 1 ? 1 : opts.threads;
  return r;
}

void fill_from_coverage(DReport& r, const Coverage& cov, const DCheckOptions& opts) {
  r.covered = cov.count();
  r.missing_total = cov.missing_count();
  r.is_d_function = cov.full();
  r.missing = cov.missing(opts.full_missing ? 0 : 32);
  r.missing_truncated = !opts.full_missing && r.missing_total > r.missing.size();
}

void attach_identity(DReport& r, const VBF& f) {
  r.provenance = f.provenance;
  r.field_modulus = f.field_modulus;
}

std::string mode_note(int threads) {
  return threads <= 1 ? "threads=1 (deterministic scan order, reproducible first witnesses)"
                      : "threads=" + std::to_string(threads) +
                            " (parallel blocks; first witnesses are schedule-dependent)";
}

}  // namespace

const char* method_name(DMethod m) {
  switch (m) {
    case DMethod::bruteforce: return "bruteforce";
    case DMethod::ddt: return "ddt";
    case DMethod::moment4: return "moment4";
    case DMethod::moment3_quadratic: return "moment3-quadratic";
    case DMethod::hyperplane_quadratic: return "hyperplane-quadratic";
    case DMethod::anf_span: return "anf-span";
    case DMethod::plateaued: return "plateaued";
  }
  return "unknown";
}

std::optional<DMethod> method_from_name(const std::string& s) {
  for (DMethod m : {DMethod::bruteforce, DMethod::ddt, DMethod::moment4, DMethod::moment3_quadratic,
                    DMethod::hyperplane_quadratic, DMethod::anf_span, DMethod::plateaued})
    if (s == method_name(m)) return m;
  return std::nullopt;
}

DReport d_check_bruteforce(const VBF& f, const DCheckOptions& opts) {
  const auto t0 = clock_type::now();
  DReport r = report_skeleton(f.n, f.m, DMethod::bruteforce, opts);
  attach_identity(r, f);
  const VBF g = normalize(f);
  if (is_quadratic(g)) {
    std::vector<u32> alphas(g.domain());
    for (u64 a = 0; a < g.domain(); ++a) alphas[a] = static_cast<u32>(a);
    const ScanResult scan = scan_pairs_parallel(g.table, g.n, g.m, alphas, r.threads, opts.witnesses);
    fill_from_coverage(r, scan.coverage, opts);
    r.witnesses = scan.witnesses;
    r.runtime_note = "quadratic pair scan over (a,b); " + mode_note(r.threads);
  } else {
    const unsigned budget = guard_bits(30);
    if (3u * g.n > budget)
      throw error(errc::size_limit,
                  "general triple scan would take ~2^" + std::to_string(3 * g.n) +
                      " steps (budget 2^" + std::to_string(budget) +
                      "); use the ddt or moment4 method, or raise DILLONLAB_MAX_BITS");
    const ScanResult scan = scan_triples_parallel(g.table, g.n, g.m, r.threads, opts.witnesses);
    fill_from_coverage(r, scan.coverage, opts);
    r.witnesses = scan.witnesses;
    r.runtime_note = "general (a1,a2,b) triple scan; " + mode_note(r.threads);
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

DReport d_check_ddt(const VBF& f, const DCheckOptions& opts) {
  const auto t0 = clock_type::now();
  DReport r = report_skeleton(f.n, f.m, DMethod::ddt, opts);
  attach_identity(r, f);
  const ScanResult scan = scan_ddt_parallel(f.table, f.n, f.m, r.threads, opts.witnesses);
  fill_from_coverage(r, scan.coverage, opts);
  r.witnesses = scan.witnesses;
  r.runtime_note = "row-support pair sums; " + mode_note(r.threads);
  r.elapsed_ms = ms_since(t0);
  return r;
}

namespace {

// Shared tail of the moment checkers: transform must be strictly positive at
// every checked b (b = 0 is asserted positive, never missing).
void fill_from_transform(DReport& r, const std::vector<i128>& transform, u128 unit,
                         const std::optional<std::vector<u32>>& b_filter,
                         const DCheckOptions& opts) {
  Coverage cov(r.m);
  for (u64 b = 0; b < transform.size(); ++b) {
    if (transform[b] < 0)
      throw error(errc::internal, "moment transform went negative at b=" + word_to_hex(b));
    if (static_cast<u128>(transform[b]) % unit != 0)
      throw error(errc::internal, "moment transform not divisible by the counting unit");
    if (transform[b] > 0) cov.add(static_cast<u32>(b));
  }
  if (!cov.test(0))
    throw error(errc::internal, "moment transform vanished at b=0");
  if (b_filter) {
    // Restricted verdict: only the requested values are checked.
    u64 miss = 0;
    std::vector<u32> missing;
    for (u32 b : *b_filter)
      if (!cov.test(b)) {
        ++miss;
        if (opts.full_missing || missing.size() < 32) missing.push_back(b);
      }
    std::sort(missing.begin(), missing.end());
    r.covered = cov.count();
    r.missing_total = miss;
    r.missing = std::move(missing);
    r.missing_truncated = !opts.full_missing && r.missing_total > r.missing.size();
    r.is_d_function = miss == 0 && cov.full();
  } else {
    fill_from_coverage(r, cov, opts);
  }
}

}  // namespace

DReport d_check_moment4(const VBF& f, const DCheckOptions& opts,
                        const std::optional<std::vector<u32>>& b_filter) {
  const auto t0 = clock_type::now();
  const unsigned budget = guard_bits(28);
  if (f.n + f.m > budget)
    throw error(errc::size_limit, "moment4 needs n+m <= " + std::to_string(budget) +
                                      ", got " + std::to_string(f.n + f.m));
  DReport r = report_skeleton(f.n, f.m, DMethod::moment4, opts);
  attach_identity(r, f);
  std::vector<i128> h = walsh_moment_vector(f, 4, r.threads);
  hadamard_inplace(h);
  fill_from_transform(r, h, u128{1} << (f.n + f.m), b_filter, opts);
  r.runtime_note = "F(H4)(b) = 2^(n+m) * #{(x,y,z) : F(x)+F(y)+F(z)+F(x+y+z) = b}";
  r.elapsed_ms = ms_since(t0);
  return r;
}

DReport d_check_moment3_quadratic(const VBF& f, const DCheckOptions& opts) {
  const auto t0 = clock_type::now();
  if (!is_quadratic(f))
    throw error(errc::precondition, "moment3 checker requires a quadratic function");
  const unsigned budget = guard_bits(28);
  if (f.n + f.m > budget)
    throw error(errc::size_limit, "moment3 needs n+m <= " + std::to_string(budget) +
                                      ", got " + std::to_string(f.n + f.m));
  DReport r = report_skeleton(f.n, f.m, DMethod::moment3_quadratic, opts);
  attach_identity(r, f);
  const VBF g = normalize(f);
  std::vector<i128> h = walsh_moment_vector(g, 3, r.threads);
  hadamard_inplace(h);
  fill_from_transform(r, h, u128{1} << (f.n + f.m), std::nullopt, opts);
  r.runtime_note = "F(H3)(b) = 2^(n+m) * #{(x,y) : F(x)+F(y)+F(x+y) = b} on the normalized function";
  r.elapsed_ms = ms_since(t0);
  return r;
}

DReport d_check_hyperplane_quadratic(const VBF& f, const DCheckOptions& opts,
                                     const SubspaceBasis* k_basis) {
  const auto t0 = clock_type::now();
  if (!is_quadratic(f))
    throw error(errc::precondition, "hyperplane checker requires a quadratic function");
  DReport r = report_skeleton(f.n, f.m, DMethod::hyperplane_quadratic, opts);
  attach_identity(r, f);
  std::vector<u32> kvecs;
  if (k_basis) {
    if (k_basis->ambient_n != f.n)
      throw error(errc::invalid_basis, "K basis lives in the wrong ambient space");
    if (k_basis->dim() != f.n - 1 || f2_rank(k_basis->vectors) != f.n - 1)
      throw error(errc::invalid_basis, "K must be a subspace of dimension n-1");
    kvecs = k_basis->vectors;
  } else {
    for (unsigned i = 0; i + 1 < f.n; ++i) kvecs.push_back(u32{1} << i);
  }
  const VBF g = normalize(f);
  const std::vector<u32> alphas = f2_span_points_gray(kvecs);
  const ScanResult scan = scan_pairs_parallel(g.table, g.n, g.m, alphas, r.threads, opts.witnesses);
  fill_from_coverage(r, scan.coverage, opts);
  r.witnesses = scan.witnesses;
  r.runtime_note = "alpha over a dim n-1 subspace (Gray order), beta free; " + mode_note(r.threads);
  r.elapsed_ms = ms_since(t0);
  return r;
}

DReport d_check_anf_span(const QuadraticAnf& anf, const DCheckOptions& opts) {
  const auto t0 = clock_type::now();
  const unsigned budget = guard_bits(20);
  if (anf.n > budget)
    throw error(errc::size_limit, "anf-span subset loop needs n <= " + std::to_string(budget));
  DReport r = report_skeleton(anf.n, anf.m, DMethod::anf_span, opts);
  Coverage cov(anf.m);
  cov.add(0);
  if (opts.witnesses) r.witnesses.emplace(0, DWitness{0, 0, 0});

  // Row-echelon span with the e_i-combination of each row tracked, so every
  // covered value gets a replayable (alpha, beta) direction pair.
  std::vector<u32> gen(anf.n);
  const u64 subsets = u64{1} << (anf.n - 1);
  for (u64 J = 0; J < subsets && !cov.full(); ++J) {
    for (unsigned i = 0; i < anf.n; ++i) {
      u32 acc = 0;
      for (u32 jj = static_cast<u32>(J); jj; jj &= jj - 1) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(jj));
        if (j != i) acc ^= anf.quad(i, j);
      }
      gen[i] = acc;
    }
    std::vector<u32> rows, combos;
    std::vector<unsigned> pivots;
    for (unsigned i = 0; i < anf.n; ++i) {
      u32 v = gen[i];
      u32 combo = u32{1} << i;
      for (size_t k = 0; k < rows.size(); ++k)
        if (v & (u32{1} << pivots[k])) {
          v ^= rows[k];
          combo ^= combos[k];
        }
      if (v == 0) continue;
      rows.push_back(v);
      combos.push_back(combo);
      pivots.push_back(31 - std::countl_zero(v));
    }
    const u64 span = u64{1} << rows.size();
    u32 val = 0, beta = 0;
    for (u64 y = 1; y < span; ++y) {
      const unsigned flip = static_cast<unsigned>(std::countr_zero(y));  // Gray walk
      val ^= rows[flip];
      beta ^= combos[flip];
      if (cov.add(val) && opts.witnesses)
        r.witnesses.emplace(val, DWitness{static_cast<u32>(J), beta, 0});
      if (cov.full()) break;
    }
  }
  fill_from_coverage(r, cov, opts);
  r.runtime_note = "union of generator spans over subsets J of the first n-1 variables";
  r.elapsed_ms = ms_since(t0);
  return r;
}

DReport d_check_plateaued(const VBF& f, const DCheckOptions& opts) {
  const auto t0 = clock_type::now();
  DReport r = report_skeleton(f.n, f.m, DMethod::plateaued, opts);
  attach_identity(r, f);
  const PlateauedProfile profile = plateaued_profile(f, /*with_structure=*/false, r.threads);
  if (!profile.is_plateaued)
    throw error(errc::precondition, "plateaued checker requires a plateaued function");
  std::vector<i128> lambda(u64{1} << f.m);
  lambda[0] = i128{1} << (2 * f.n);
  for (u64 v = 1; v < lambda.size(); ++v) {
    const i128 a = *profile.amplitude[v];
    lambda[v] = a * a;
  }
  hadamard_inplace(lambda);
  fill_from_transform(r, lambda, u128{1} << f.m, std::nullopt, opts);
  r.runtime_note = "F(Lambda)(w) = 2^m * #{(a,b) : D^2_{a,b}F(x) = w} (x-independent)";
  r.elapsed_ms = ms_since(t0);
  return r;
}

DReport check_d(const VBF& f, const DCheckOptions& opts) {
  if (is_quadratic(f)) return d_check_hyperplane_quadratic(f, opts);
  if (3 * f.n <= 24) return d_check_bruteforce(f, opts);
  return d_check_ddt(f, opts);
}

bool UltraTransitiveSet::is_ultra_transitive() const {
  if (pairs.empty()) return false;
  for (const auto& [i, j] : pairs)
    for (const auto& [l, k] : pairs)
      if (i != k && !pairs.count({i, k})) return false;
  return true;
}

std::set<std::pair<unsigned, unsigned>> UltraTransitiveSet::reduced() const {
  std::set<std::pair<unsigned, unsigned>> out;
  for (const auto& [i, j] : pairs)
    if (!pairs.count({j, i})) out.insert({i, j});
  return out;
}

UltraTransitiveSet UltraTransitiveSet::from_directions(unsigned n, u32 alpha1, u32 alpha2) {
  UltraTransitiveSet I;
  I.n = n;
  for (unsigned i = 0; i < n; ++i) {
    if (!((alpha1 >> i) & 1)) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (!((alpha2 >> j) & 1) || i == j) continue;
      I.pairs.insert({i + 1, j + 1});
    }
  }
  return I;
}

u32 reduced_coefficient_sum(const QuadraticAnf& anf, const UltraTransitiveSet& I) {
  u32 acc = 0;
  for (const auto& [i, j] : I.reduced()) acc ^= anf.quad(i - 1, j - 1);
  return acc;
}

ApnAnfResult apn_check_anf(const QuadraticAnf& anf) {
  ApnAnfResult out;
  const u64 dom = u64{1} << anf.n;
  // h[j](alpha) = D^2_{alpha, e_j} F(0); the kernel of beta -> sum over
  // supp(beta) of h[j] must be {0, alpha} for every nonzero alpha.
  std::vector<u32> h(anf.n);
  for (u64 alpha = 1; alpha < dom; ++alpha) {
    for (unsigned j = 0; j < anf.n; ++j) {
      u32 acc = 0;
      for (u32 t = static_cast<u32>(alpha); t; t &= t - 1) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(t));
        if (i != j) acc ^= anf.quad(i, j);
      }
      h[j] = acc;
    }
    const std::vector<u32> kernel = f2_nullspace(h, anf.n);
    if (kernel.size() <= 1) continue;  // kernel = {0, alpha}
    for (u32 cand : f2_span_points(kernel)) {
      if (cand == 0 || cand == alpha) continue;
      out.apn = false;
      out.alpha1 = static_cast<u32>(alpha);
      out.alpha2 = cand;
      out.counterexample = UltraTransitiveSet::from_directions(anf.n, out.alpha1, out.alpha2);
      return out;
    }
    throw error(errc::internal, "kernel of dimension >= 2 held no fresh direction");
  }
  out.apn = true;
  return out;
}

namespace {

void require_structural(bool ok, const std::string& assumption) {
  if (!ok)
    throw error(errc::structural_mismatch, "structural assumption failed: " + assumption);
}

}  // namespace

OmegaReport omega_report(const VBF& f, int threads) {
  require_structural(f.n % 2 == 0, "n must be even");
  require_structural(f.m == f.n + 1, "function must map n bits to n+1 bits");
  require_structural(is_apn(f, threads), "function must be APN");
  const PlateauedProfile profile = plateaued_profile(f, /*with_structure=*/true, threads);
  require_structural(profile.is_plateaued, "function must be plateaued");
  require_structural(profile.strongly_plateaued(),
                     "every nonzero component must be partially-bent (strongly plateaued)");

  const u64 half = u64{1} << f.n;
  require_structural(profile.bent_set_size == half, "|B| = 2^n bent components");
  require_structural(profile.nonbent_set.size() == half - 1, "|NB| = 2^n - 1 non-bent components");
  u64 ell_sum = 0;
  for (u64 v = 1; v < (u64{1} << f.m); ++v) ell_sum += (u64{1} << profile.structure_dim[v]) - 1;
  require_structural(ell_sum == 3 * (half - 1), "sum of (2^ell_v - 1) = 3(2^n - 1)");
  for (u32 v : profile.nonbent_set)
    require_structural(profile.structure_dim[v] == 2, "ell_v = 2 on every non-bent component");

  OmegaReport rep;
  rep.n = f.n;
  rep.m = f.m;
  rep.bent_count = profile.bent_set_size;
  rep.nonbent_count = profile.nonbent_set.size();
  rep.omega_sizes.assign(u64{1} << f.m, 0);
  rep.min_omega = ~u64{0};
  for (u64 w = 0; w < rep.omega_sizes.size(); ++w) {
    u64 count = 0;
    for (u32 v : profile.nonbent_set)
      if (dot(v, static_cast<u32>(w)) == 0) ++count;
    rep.omega_sizes[w] = count;
    if (count < rep.min_omega) {
      rep.min_omega = count;
      rep.argmin_w = static_cast<u32>(w);
    }
  }
  rep.is_d_function = 3 * rep.min_omega > half - 1;
  return rep;
}

DimensionBounds dimension_bounds(unsigned n, bool quadratic) {
  if (quadratic) {
    if (n <= 3) throw error(errc::invalid_arguments, "quadratic bound requires n > 3");
    return {n, 2 * n - 3};
  }
  if (n <= 2) throw error(errc::invalid_arguments, "general bound requires n > 2");
  const u128 N = u128{1} << n;
  const u128 planes = N * (N - 1) * (N / 2 - 1) / 12;
  const u128 limit = planes + 1;
  unsigned m_max = 0;
  while ((u128{1} << (m_max + 1)) <= limit) ++m_max;
  return {n, m_max};
}

std::vector<u64> second_order_spectrum(const VBF& f, u32 gamma, u32 eta) {
  if (f.m > 28) throw error(errc::size_limit, "spectrum array not materializable for m > 28");
  std::vector<u64> counts(u64{1} << f.m, 0);
  for (u64 x = 0; x < f.domain(); ++x)
    ++counts[f.table[x] ^ f.table[x ^ gamma] ^ f.table[x ^ eta] ^ f.table[x ^ gamma ^ eta]];
  return counts;
}

bool MomentIdentityReport::all_applicable_hold() const {
  for (const Item* it : {&fourth_moment, &third_moment_quadratic, &plateaued_amplitudes})
    if (it->applicable && !it->holds) return false;
  return true;
}

MomentIdentityReport verify_moment_identities(const VBF& f,
                                              const std::optional<std::vector<u32>>& sample,
                                              int threads) {
  const unsigned budget = guard_bits(22);
  if (f.n + f.m > budget)
    throw error(errc::size_limit, "moment identity suite needs n+m <= " + std::to_string(budget));

  MomentIdentityReport rep;
  rep.fourth_moment.name = "fourth-moment vs second-order spectrum";
  rep.third_moment_quadratic.name = "third-moment vs second-order spectrum (quadratic, normalized)";
  rep.plateaued_amplitudes.name = "amplitude transform vs second-order spectrum (plateaued)";

  std::vector<u32> bs;
  if (sample) {
    bs = *sample;
  } else {
    bs.resize(u64{1} << f.m);
    for (u64 b = 0; b < bs.size(); ++b) bs[b] = static_cast<u32>(b);
  }

  // T(b) = sum over (gamma, eta) of N_F(gamma, eta, b), straight from the
  // definition; the independent side of all three identities.
  std::vector<u64> T(u64{1} << f.m, 0);
  const u64 dom = f.domain();
  for (u64 gamma = 0; gamma < dom; ++gamma)
    for (u64 eta = 0; eta < dom; ++eta)
      for (u64 x = 0; x < dom; ++x)
        ++T[f.table[x] ^ f.table[x ^ gamma] ^ f.table[x ^ eta] ^ f.table[x ^ gamma ^ eta]];

  auto run_item = [&](MomentIdentityReport::Item& item, const std::vector<i128>& lhs,
                      auto rhs_of) {
    item.applicable = true;
    item.holds = true;
    for (u32 b : bs) {
      const i128 rhs = rhs_of(b);
      if (lhs[b] != rhs) {
        item.holds = false;
        item.first_mismatch = b;
        item.lhs = i128_to_string(lhs[b]);
        item.rhs = i128_to_string(rhs);
        break;
      }
    }
  };

  {
    std::vector<i128> h4 = walsh_moment_vector(f, 4, threads);
    hadamard_inplace(h4);
    run_item(rep.fourth_moment, h4,
             [&](u32 b) { return (i128{1} << (f.n + f.m)) * static_cast<i128>(T[b]); });
  }

  if (!is_quadratic(f)) {
    rep.third_moment_quadratic.skip_reason = "function is not quadratic";
  } else if (f.table[0] != 0) {
    rep.third_moment_quadratic.skip_reason = "function is not normalized (F(0) != 0)";
  } else {
    std::vector<i128> h3 = walsh_moment_vector(f, 3, threads);
    hadamard_inplace(h3);
    run_item(rep.third_moment_quadratic, h3,
             [&](u32 b) { return (i128{1} << f.m) * static_cast<i128>(T[b]); });
  }

  const PlateauedProfile profile = plateaued_profile(f, /*with_structure=*/false, threads);
  if (!profile.is_plateaued) {
    rep.plateaued_amplitudes.skip_reason = "function is not plateaued";
  } else {
    std::vector<i128> lambda(u64{1} << f.m, 0);
    for (u64 v = 1; v < lambda.size(); ++v) {
      const i128 a = *profile.amplitude[v];
      lambda[v] = a * a;
    }
    hadamard_inplace(lambda);  // gives sum over v != 0 of lambda_v^2 (-1)^(v.w)
    run_item(rep.plateaued_amplitudes, lambda, [&](u32 w) {
      return (i128{1} << (f.m - f.n)) * static_cast<i128>(T[w]) - (i128{1} << (2 * f.n));
    });
  }
  return rep;
}

}  // namespace dillonlab
