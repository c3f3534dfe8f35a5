#include "dillonlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "dillonlab/io.hpp"

namespace dillonlab {

namespace {

struct Claims {
  ExperimentResult result;

  void check(bool ok, const std::string& what) {
    result.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) result.pass = false;
  }
  void note(const std::string& what) { result.lines.push_back("     " + what); }
};

std::string fn_tag(const VBF& f) {
  std::ostringstream os;
  os << "(" << f.n << "," << f.m << ") " << (f.provenance.empty() ? "anonymous" : f.provenance);
  return os.str();
}

BuiltFunction built_from(VBF f) {
  BuiltFunction b;
  b.f = std::move(f);
  return b;
}

BuiltFunction restricted_gold(unsigned n1, unsigned i) {
  FamilySpec spec;
  spec.family = Family::gold;
  spec.n1 = n1;
  spec.i = i;
  spec.restriction = Restriction{Restriction::Kind::trace_zero, 1};
  return build_function(spec);
}

BuiltFunction restricted_x3tr9(unsigned n1) {
  FamilySpec spec;
  spec.family = Family::x3_tr9;
  spec.n1 = n1;
  spec.restriction = Restriction{Restriction::Kind::trace_zero, 1};
  return build_function(spec);
}

// --- experiment: dillon-baseline -------------------------------------------

void run_dillon_baseline(Claims& c, int threads) {
  DCheckOptions opts;
  opts.threads = threads;
  for (unsigned n = 3; n <= 8; ++n) {
    for (unsigned i = 1; i < n; ++i) {
      if (std::gcd(i, n) != 1) continue;
      const VBF f = gold(n, i);
      c.check(is_apn(f, threads), "gold(" + std::to_string(n) + "," + std::to_string(i) + ") is APN");
      std::vector<DReport> reports;
      reports.push_back(d_check_bruteforce(f, opts));
      reports.push_back(d_check_ddt(f, opts));
      reports.push_back(d_check_moment4(f, opts));
      reports.push_back(d_check_moment3_quadratic(f, opts));
      reports.push_back(d_check_hyperplane_quadratic(f, opts));
      reports.push_back(d_check_anf_span(to_quadratic_anf(f), opts));
      reports.push_back(d_check_plateaued(f, opts));
      bool all_d = true;
      for (const DReport& r : reports) all_d = all_d && r.is_d_function;
      c.check(all_d, "gold(" + std::to_string(n) + "," + std::to_string(i) +
                         ") is a D-function by all 7 checkers");
    }
  }
}

// --- experiment: remark-n7 --------------------------------------------------

void run_remark_n7(Claims& c, int threads) {
  DCheckOptions opts;
  opts.threads = threads;
  opts.full_missing = true;
  const BuiltFunction built = restricted_gold(7, 1);
  const VBF& f = built.f;
  c.check(f.n == 6 && f.m == 7, "restricted gold(7,1) is a (6,7)-function");
  c.check(differential_uniformity(f, threads) == 2, "restricted gold(7,1) has delta = 2");
  const DReport r = d_check_hyperplane_quadratic(f, opts);
  c.check(!r.is_d_function && r.missing_total > 0,
          "restricted gold(7,1) is not a D-function (missing set nonempty)");
  std::ostringstream os;
  os << "missing set over modulus " << word_to_hex(*f.field_modulus) << " ("
     << poly_to_string(*f.field_modulus) << "):";
  for (u32 v : r.missing) os << " " << word_to_hex(v);
  c.note(os.str());
}

// --- experiments: family-even / family-odd / extension-17 -------------------

void check_restricted_d(Claims& c, const BuiltFunction& built, int threads) {
  DCheckOptions opts;
  opts.threads = threads;
  const DReport r = d_check_hyperplane_quadratic(built.f, opts);
  c.check(r.is_d_function, built.f.provenance + " satisfies the D-property (hyperplane checker)");
}

void run_family_even(Claims& c, int threads) {
  for (const auto& [n1, i] :
       std::vector<std::pair<unsigned, unsigned>>{{6, 1}, {8, 1}, {8, 3}, {10, 1}, {10, 3}})
    check_restricted_d(c, restricted_gold(n1, i), threads);
}

void run_family_odd(Claims& c, int threads) {
  for (unsigned n1 : {9u, 11u, 13u, 15u}) {
    check_restricted_d(c, restricted_gold(n1, 1), threads);
    check_restricted_d(c, restricted_x3tr9(n1), threads);
  }
}

void run_extension_17(Claims& c, int threads) {
  check_restricted_d(c, restricted_gold(17, 1), threads);
  check_restricted_d(c, restricted_x3tr9(17), threads);
}

// --- experiment: cross-validate ---------------------------------------------

std::vector<DReport> applicable_reports(const CorpusEntry& entry, const DCheckOptions& opts) {
  const VBF& f = entry.fn.f;
  std::vector<DReport> reports;
  reports.push_back(d_check_bruteforce(f, opts));
  reports.push_back(d_check_ddt(f, opts));
  if (f.n + f.m <= guard_bits(28)) reports.push_back(d_check_moment4(f, opts));
  if (is_quadratic(f)) {
    if (f.n + f.m <= guard_bits(28)) reports.push_back(d_check_moment3_quadratic(f, opts));
    reports.push_back(d_check_hyperplane_quadratic(f, opts));
    const QuadraticAnf anf = entry.fn.anf ? *entry.fn.anf : to_quadratic_anf(f);
    reports.push_back(d_check_anf_span(anf, opts));
  }
  if (plateaued_profile(f, /*with_structure=*/false, opts.threads).is_plateaued)
    reports.push_back(d_check_plateaued(f, opts));
  return reports;
}

void run_cross_validate(Claims& c, int threads, bool reduced) {
  const std::vector<CorpusEntry> corpus = build_corpus(reduced);
  c.note("corpus size: " + std::to_string(corpus.size()) + " functions (n <= 6, m <= 8)");
  DCheckOptions opts;
  opts.threads = threads;
  opts.full_missing = true;
  u64 discrepancies = 0;
  u64 comparisons = 0;
  std::string first_bad;
  for (const CorpusEntry& entry : corpus) {
    const std::vector<DReport> reports = applicable_reports(entry, opts);
    for (size_t k = 1; k < reports.size(); ++k) {
      ++comparisons;
      const bool same = reports[k].is_d_function == reports[0].is_d_function &&
                        reports[k].missing == reports[0].missing;
      if (!same) {
        ++discrepancies;
        if (first_bad.empty())
          first_bad = entry.label + ": " + method_name(reports[k].method) + " vs " +
                      method_name(reports[0].method);
      }
    }
  }
  c.check(discrepancies == 0,
          "all applicable checkers agree on verdict and missing set (" +
              std::to_string(comparisons) + " method comparisons, " +
              std::to_string(discrepancies) + " discrepancies" +
              (first_bad.empty() ? "" : ", first: " + first_bad) + ")");
}

// --- experiment: moment-identities ------------------------------------------

void run_moment_identities(Claims& c, int threads) {
  u64 seed = 0x5eedULL;
  unsigned checked = 0;
  unsigned failures = 0;
  unsigned id2_runs = 0;
  unsigned id3_runs = 0;
  for (unsigned idx = 0; idx < 50; ++idx) {
    const unsigned n = 2 + (idx % 9) / 3;      // 2..4
    const unsigned m = 2 + (idx * 5 + 1) % 4;  // 2..5
    VBF f;
    if (idx % 3 == 0) {
      f = random_table_vbf(n, m, seed + idx);
    } else if (idx % 3 == 1 && n >= 3) {
      f = random_bounded_degree_vbf(n, m, 3, seed + idx);
    } else {
      f = from_anf(random_quadratic(n, m, seed + idx));
    }
    const MomentIdentityReport rep = verify_moment_identities(f, std::nullopt, threads);
    ++checked;
    if (!rep.all_applicable_hold()) ++failures;
    if (rep.third_moment_quadratic.applicable) ++id2_runs;
    if (rep.plateaued_amplitudes.applicable) ++id3_runs;
  }
  c.check(failures == 0, "identities 1-3 hold exactly on " + std::to_string(checked) +
                             " random functions (identity 2 ran " + std::to_string(id2_runs) +
                             "x, identity 3 ran " + std::to_string(id3_runs) + "x)");

  for (unsigned n : {4u, 5u}) {
    const VBF f = gold(n, 1);
    std::vector<i128> h3 = walsh_moment_vector(f, 3, threads);
    hadamard_inplace(h3);
    const i128 expected = (i128{1} << (2 * n)) * (3 * (i128{1} << n) - 2);
    c.check(h3[0] == expected,
            "gold(" + std::to_string(n) + ",1): sum of W^3 at b=0 equals 2^(n+m)(3*2^n - 2) = " +
                i128_to_string(expected));
  }
}

// --- experiments: strongly-plateaued / n2-negative ---------------------------

void run_strongly_plateaued(Claims& c, int threads) {
  DCheckOptions opts;
  opts.threads = threads;
  opts.full_missing = true;
  for (unsigned n1 : {5u, 7u}) {
    const BuiltFunction built = restricted_gold(n1, 1);
    const OmegaReport omega = omega_report(built.f, threads);
    c.check(true, "restricted gold(" + std::to_string(n1) +
                      ",1): structural facts hold (|B|=2^n, |NB|=2^n-1, ell_v=2 on NB, "
                      "sum(2^ell_v - 1)=3(2^n-1))");
    const DReport brute = d_check_bruteforce(built.f, opts);
    c.check(omega.is_d_function == brute.is_d_function,
            "restricted gold(" + std::to_string(n1) + ",1): omega verdict matches bruteforce (" +
                (brute.is_d_function ? "D-function" : "not-D-function") + ", min |Omega_w| = " +
                std::to_string(omega.min_omega) + ", threshold " +
                std::to_string(((u64{1} << built.f.n) - 1) / 3) + ")");
  }
  // d_check_plateaued vs bruteforce across a quadratic corpus.
  u64 agree = 0, total = 0;
  for (const CorpusEntry& entry : build_corpus(/*reduced=*/true)) {
    if (!is_quadratic(entry.fn.f)) continue;
    const DReport p = d_check_plateaued(entry.fn.f, opts);
    const DReport b = d_check_bruteforce(entry.fn.f, opts);
    ++total;
    if (p.is_d_function == b.is_d_function && p.missing == b.missing) ++agree;
  }
  c.check(agree == total, "d_check_plateaued agrees with bruteforce on all " +
                              std::to_string(total) + " corpus quadratics");
}

void run_n2_negative(Claims& c, int threads) {
  DCheckOptions opts;
  opts.threads = threads;
  for (unsigned i : {1u, 2u}) {
    const BuiltFunction built = restricted_gold(3, i);
    const DReport brute = d_check_bruteforce(built.f, opts);
    const OmegaReport omega = omega_report(built.f, threads);
    c.check(!brute.is_d_function && !omega.is_d_function,
            "restricted gold(3," + std::to_string(i) +
                ") is not a D-function (bruteforce and omega criterion agree)");
  }
}

// --- experiment: bounds -------------------------------------------------------

void run_bounds(Claims& c, int threads) {
  // Hand-evaluated floor(log2(2^n (2^n-1)(2^(n-1)-1)/12 + 1)) for n = 3..10.
  const unsigned expected_general[] = {3, 7, 10, 13, 16, 19, 22, 25};
  bool general_ok = true;
  for (unsigned n = 3; n <= 10; ++n) {
    const DimensionBounds b = dimension_bounds(n, false);
    if (b.m_min != n || b.m_max != expected_general[n - 3]) general_ok = false;
    if (b.m_max >= 3 * n - 4) general_ok = false;  // strict paper bound
  }
  c.check(general_ok, "general bounds match hand-evaluated values for n = 3..10 (and < 3n-4)");

  bool quad_ok = true;
  for (unsigned n = 4; n <= 10; ++n) {
    const DimensionBounds b = dimension_bounds(n, true);
    if (b.m_min != n || b.m_max != 2 * n - 3) quad_ok = false;
  }
  c.check(quad_ok, "quadratic bounds equal m <= 2n-3 for n = 4..10");

  bool planes_ok = true;
  for (unsigned n = 2; n <= 8; ++n) {
    const VBF zero = from_truth_table(n, 1, std::vector<u32>(u64{1} << n, 0));
    if (phi_image(zero, PlaneKind::affine).plane_count != affine_plane_count(n)) planes_ok = false;
    if (phi_image(zero, PlaneKind::vector).plane_count != vector_plane_count(n)) planes_ok = false;
  }
  c.check(planes_ok, "plane enumeration counts match |AFF_{2,n}| and |V_{2,n}| for n = 2..8");

  DCheckOptions opts;
  opts.threads = threads;
  u64 violations = 0, d_functions = 0;
  for (const CorpusEntry& entry : build_corpus(/*reduced=*/false)) {
    const VBF& f = entry.fn.f;
    const bool quadratic = is_quadratic(f);
    if (quadratic ? f.n <= 3 : f.n <= 2) continue;
    if (!check_d(f, opts).is_d_function || !is_apn(f, threads)) continue;
    ++d_functions;
    const DimensionBounds b = dimension_bounds(f.n, quadratic);
    if (f.m < b.m_min || f.m > b.m_max) ++violations;
  }
  c.check(violations == 0, "no corpus APN D-function violates its dimension range (" +
                               std::to_string(d_functions) + " checked)");
}

// --- experiment: properties (module invariants) -------------------------------

void run_properties(Claims& c, int threads) {
  std::mt19937_64 rng(0xd1110ULL);
  DCheckOptions wopts;
  wopts.threads = 1;
  wopts.witnesses = true;

  std::vector<BuiltFunction> sample;
  sample.push_back(built_from(random_table_vbf(4, 4, 11)));
  sample.push_back(built_from(random_table_vbf(5, 6, 12)));
  sample.push_back(built_from(random_bounded_degree_vbf(5, 5, 3, 13)));
  sample.push_back(built_from(from_anf(random_quadratic(5, 7, 14))));
  sample.push_back(built_from(from_anf(random_quadratic(6, 8, 15))));
  sample.push_back(built_from(gold(5, 1)));
  sample.push_back(built_from(gold(6, 1)));
  sample.push_back(restricted_gold(6, 1));
  sample.push_back(restricted_gold(7, 1));
  sample.push_back(built_from(x3_tr9(6)));

  bool parseval_ok = true, direct_ok = true;
  for (const BuiltFunction& b : sample) {
    const VBF& f = b.f;
    for (int probe = 0; probe < 5; ++probe) {
      const u32 v = static_cast<u32>(rng()) & ((u32{1} << f.m) - 1);
      const WalshRow row = walsh_row(f, v);
      i128 sq = 0;
      for (i64 w : row.values) sq += static_cast<i128>(w) * w;
      if (sq != (i128{1} << (2 * f.n))) parseval_ok = false;
      const u32 u = static_cast<u32>(rng()) & static_cast<u32>(f.domain() - 1);
      i64 direct = 0;
      for (u64 x = 0; x < f.domain(); ++x)
        direct += (dot(v, f.table[x]) ^ dot(u, static_cast<u32>(x))) ? -1 : 1;
      if (direct != row.values[u]) direct_ok = false;
    }
    const WalshRow zero_row = walsh_row(f, 0);
    if (zero_row.values[0] != static_cast<i64>(f.domain())) parseval_ok = false;
    for (u64 u = 1; u < f.domain(); ++u)
      if (zero_row.values[u] != 0) parseval_ok = false;
  }
  c.check(parseval_ok, "Parseval holds per component; v=0 row is (2^n, 0, ..., 0)");
  c.check(direct_ok, "fast Walsh rows match direct character sums on random probes");

  bool ddt_ok = true;
  for (const BuiltFunction& b : sample) {
    const VBF& f = b.f;
    for (u64 a = 1; a < f.domain(); ++a) {
      const DdtRow row = ddt_row(f, static_cast<u32>(a));
      u64 sum = 0;
      for (u32 cnt : row.counts) {
        sum += cnt;
        if (cnt % 2) ddt_ok = false;
      }
      if (sum != f.domain()) ddt_ok = false;
    }
  }
  c.check(ddt_ok, "DDT rows sum to 2^n with every entry even");

  bool lambda_ok = true;
  for (const VBF f : {gold(4, 1), gold(6, 1), gold(8, 1), from_anf(random_quadratic(6, 6, 21))}) {
    const PlateauedProfile p = plateaued_profile(f, /*with_structure=*/true, threads);
    if (!p.is_plateaued) lambda_ok = false;
    for (u64 v = 1; v < p.amplitude.size(); ++v) {
      if (!p.partially_bent[v]) lambda_ok = false;
      const i64 lam = p.amplitude[v].value_or(0);
      if (lam * lam != (i64{1} << (f.n + p.structure_dim[v]))) lambda_ok = false;
    }
  }
  c.check(lambda_ok, "lambda_v^2 = 2^(n + ell_v) on every partially-bent component (quadratics)");

  bool ea_ok = true;
  for (size_t k = 0; k < sample.size(); k += 2) {
    const VBF& f = sample[k].f;
    const AffineMap a1 = random_invertible_affine(f.m, rng);
    const AffineMap a2 = random_invertible_affine(f.n, rng);
    const AffineMap add = random_affine(f.n, f.m, rng);
    const VBF g = ea_transform(f, a1, a2, add);
    DCheckOptions opts;
    opts.threads = threads;
    if (check_d(f, opts).is_d_function != check_d(g, opts).is_d_function) ea_ok = false;
    if (degree(f) != degree(g)) ea_ok = false;
    if (differential_uniformity(f, threads) != differential_uniformity(g, threads)) ea_ok = false;
  }
  c.check(ea_ok, "EA transforms preserve degree, differential uniformity, and the D-verdict");

  bool moebius_ok = true;
  for (const BuiltFunction& b : sample) {
    const VBF& f = b.f;
    VBF round = f;
    round.table = to_anf(f);
    round.table = to_anf(round);
    if (round.table != f.table) moebius_ok = false;
    if (is_quadratic(f) && from_anf(to_quadratic_anf(f)).table != f.table) moebius_ok = false;
  }
  c.check(moebius_ok, "Moebius transform is an involution; quadratic ANF round-trips");

  bool witness_ok = true;
  for (const BuiltFunction& b : sample) {
    const VBF g = normalize(b.f);
    std::vector<DReport> reports;
    reports.push_back(d_check_bruteforce(b.f, wopts));
    reports.push_back(d_check_ddt(b.f, wopts));
    if (is_quadratic(b.f)) {
      reports.push_back(d_check_hyperplane_quadratic(b.f, wopts));
      reports.push_back(d_check_anf_span(to_quadratic_anf(b.f), wopts));
    }
    for (const DReport& r : reports)
      for (const auto& [val, w] : r.witnesses)
        if (second_derivative(g, w.a, w.b, w.x) != val) witness_ok = false;
  }
  c.check(witness_ok, "every recorded witness replays through second_derivative");

  bool nl_ok = true;
  DCheckOptions opts;
  opts.threads = threads;
  for (const BuiltFunction& b : sample)
    if (check_d(b.f, opts).is_d_function && nonlinearity(b.f, threads) <= 0) nl_ok = false;
  c.check(nl_ok, "every D-function in the sample has nonlinearity > 0");

  bool delta_ok = true;
  {
    const VBF lin = from_anf([] {
      QuadraticAnf a;
      a.n = 4;
      a.m = 4;
      a.a_lin = {1, 2, 4, 8};
      return a;
    }());
    if (delta_set(lin, 5).size() != 16) delta_ok = false;
    const VBF f = restricted_gold(5, 1).f;
    for (u64 a = 1; a < f.domain(); ++a) {
      const std::vector<u32> ds = delta_set(f, static_cast<u32>(a));
      if (ds.size() != 4) delta_ok = false;  // Nyberg: |Delta_a| = 4 in this setting
      for (u32 v1 : ds)
        for (u32 v2 : ds)
          if (!std::binary_search(ds.begin(), ds.end(), v1 ^ v2)) delta_ok = false;
    }
  }
  c.check(delta_ok, "Delta_a is a subspace; |Delta_a| = 4 on the strongly plateaued restriction");

  bool count_ok = true;
  for (const VBF f : {from_anf(random_quadratic(4, 5, 31)), from_anf(random_quadratic(5, 5, 32))}) {
    const PlateauedProfile p = plateaued_profile(f, false, threads);
    if (!p.is_plateaued) { count_ok = false; continue; }
    std::vector<i128> lambda(u64{1} << f.m, 0);
    lambda[0] = i128{1} << (2 * f.n);
    for (u64 v = 1; v < lambda.size(); ++v) {
      const i128 amp = p.amplitude[v].value_or(0);
      lambda[v] = amp * amp;
    }
    hadamard_inplace(lambda);
    std::vector<u64> pairs(u64{1} << f.m, 0);
    const VBF g = normalize(f);
    for (u64 a = 0; a < f.domain(); ++a)
      for (u64 b = 0; b < f.domain(); ++b)
        ++pairs[g.table[a] ^ g.table[b] ^ g.table[a ^ b]];
    for (u64 w = 0; w < pairs.size(); ++w)
      if (lambda[w] != static_cast<i128>(pairs[w]) * (i128{1} << f.m)) count_ok = false;
  }
  c.check(count_ok, "plateaued transform / 2^m equals the brute-force pair count for every w");
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"dillon-baseline", "remark-n7",         "family-even",      "family-odd",
          "extension-17",    "cross-validate",    "moment-identities", "strongly-plateaued",
          "n2-negative",     "bounds",            "properties"};
}

ExperimentResult run_experiment(const std::string& name, int threads) {
  Claims c;
  c.result.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (name == "dillon-baseline")
      run_dillon_baseline(c, threads);
    else if (name == "remark-n7")
      run_remark_n7(c, threads);
    else if (name == "family-even")
      run_family_even(c, threads);
    else if (name == "family-odd")
      run_family_odd(c, threads);
    else if (name == "extension-17")
      run_extension_17(c, threads);
    else if (name == "cross-validate")
      run_cross_validate(c, threads, /*reduced=*/false);
    else if (name == "moment-identities")
      run_moment_identities(c, threads);
    else if (name == "strongly-plateaued")
      run_strongly_plateaued(c, threads);
    else if (name == "n2-negative")
      run_n2_negative(c, threads);
    else if (name == "bounds")
      run_bounds(c, threads);
    else if (name == "properties")
      run_properties(c, threads);
    else
      throw error(errc::invalid_arguments, "unknown experiment '" + name + "'");
  } catch (const error& e) {
    if (e.kind() == errc::invalid_arguments) throw;
    c.check(false, std::string("aborted: ") + e.what());
  }
  c.result.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c.result;
}

VBF random_table_vbf(unsigned n, unsigned m, u64 seed) {
  std::mt19937_64 rng(seed);
  const u32 mask = (m == 32) ? ~u32{0} : (u32{1} << m) - 1;
  std::vector<u32> table(u64{1} << n);
  for (u32& w : table) w = static_cast<u32>(rng()) & mask;
  VBF f = from_truth_table(n, m, std::move(table));
  f.provenance = "table:n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                 ",seed=" + std::to_string(seed);
  return f;
}

VBF random_bounded_degree_vbf(unsigned n, unsigned m, unsigned max_degree, u64 seed) {
  std::mt19937_64 rng(seed);
  const u32 mask = (m == 32) ? ~u32{0} : (u32{1} << m) - 1;
  std::vector<u32> coeffs(u64{1} << n, 0);
  for (u64 mono = 1; mono < coeffs.size(); ++mono)
    if (static_cast<unsigned>(std::popcount(mono)) <= max_degree)
      coeffs[mono] = static_cast<u32>(rng()) & mask;
  // The Moebius transform is an involution: transforming the coefficient
  // array yields the truth table.
  for (unsigned i = 0; i < n; ++i) {
    const u64 step = u64{1} << i;
    for (u64 j = 0; j < coeffs.size(); ++j)
      if (j & step) coeffs[j] ^= coeffs[j ^ step];
  }
  VBF f = from_truth_table(n, m, std::move(coeffs));
  f.provenance = "bounded-degree:n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                 ",deg=" + std::to_string(max_degree) + ",seed=" + std::to_string(seed);
  return f;
}

AffineMap random_affine(unsigned dim_in, unsigned dim_out, std::mt19937_64& rng) {
  AffineMap a;
  a.dim_in = dim_in;
  a.dim_out = dim_out;
  const u32 mask = (dim_out == 32) ? ~u32{0} : (u32{1} << dim_out) - 1;
  a.rows.resize(dim_in);
  for (u32& r : a.rows) r = static_cast<u32>(rng()) & mask;
  a.offset = static_cast<u32>(rng()) & mask;
  return a;
}

AffineMap random_invertible_affine(unsigned dim, std::mt19937_64& rng) {
  for (;;) {
    AffineMap a = random_affine(dim, dim, rng);
    if (affine_invertible(a)) return a;
  }
}

std::vector<CorpusEntry> build_corpus(bool reduced, u64 seed) {
  std::vector<CorpusEntry> corpus;
  auto add = [&](BuiltFunction fn, const std::string& label) {
    corpus.push_back(CorpusEntry{std::move(fn), label});
  };

  const unsigned quad_count = reduced ? 40 : 220;
  for (unsigned idx = 0; idx < quad_count; ++idx) {
    const unsigned n = 2 + idx % 5;                 // 2..6
    const unsigned m = 1 + (idx * 7 + n) % 8;       // 1..8
    BuiltFunction b;
    b.anf = random_quadratic(n, m, seed + idx);
    b.f = from_anf(*b.anf);
    b.f.provenance = "rand2:n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                     ",seed=" + std::to_string(seed + idx);
    add(std::move(b), "quadratic#" + std::to_string(idx));
  }

  const unsigned cubic_count = reduced ? 20 : 120;
  for (unsigned idx = 0; idx < cubic_count; ++idx) {
    const unsigned n = 3 + idx % 4;            // 3..6
    const unsigned m = 1 + (idx * 5 + n) % 8;  // 1..8
    add(built_from(random_bounded_degree_vbf(n, m, 3, seed + 1000 + idx)),
        "cubic#" + std::to_string(idx));
  }

  const unsigned table_count = reduced ? 20 : 100;
  for (unsigned idx = 0; idx < table_count; ++idx) {
    const unsigned n = 2 + idx % 5;
    const unsigned m = 1 + (idx * 3 + n) % 8;
    add(built_from(random_table_vbf(n, m, seed + 2000 + idx)), "table#" + std::to_string(idx));
  }

  // Catalog families and their restrictions, kept within (6, 8).
  for (unsigned n1 = 3; n1 <= 6; ++n1) {
    for (unsigned i = 1; i < n1; ++i) add(built_from(gold(n1, i)), "gold-full");
    add(built_from(x3_tr9(n1)), "x3tr9-full");
  }
  for (unsigned n1 = (reduced ? 5u : 4u); n1 <= 7; ++n1) {
    for (unsigned i = 1; i < (reduced ? 2u : n1); ++i) {
      FamilySpec spec;
      spec.family = Family::gold;
      spec.n1 = n1;
      spec.i = i;
      spec.restriction = Restriction{Restriction::Kind::trace_zero, 1};
      add(build_function(spec), "gold-restricted-t0");
      if (!reduced)
        for (u32 alpha : {2u, 3u}) {
          spec.restriction = Restriction{Restriction::Kind::hyperplane, alpha};
          add(build_function(spec), "gold-restricted-h" + std::to_string(alpha));
        }
    }
    FamilySpec spec;
    spec.family = Family::x3_tr9;
    spec.n1 = n1;
    spec.restriction = Restriction{Restriction::Kind::trace_zero, 1};
    add(build_function(spec), "x3tr9-restricted-t0");
    if (!reduced) {
      spec.restriction = Restriction{Restriction::Kind::hyperplane, 2};
      add(build_function(spec), "x3tr9-restricted-h2");
    }
  }
  return corpus;
}

}  // namespace dillonlab
