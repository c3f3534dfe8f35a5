#include "doctest.h"

#include <random>
#include <set>

#include "dillonlab/catalog.hpp"
#include "dillonlab/dproperty.hpp"
#include "dillonlab/experiments.hpp"

using namespace dillonlab;

namespace {

BuiltFunction restricted_gold_t0(unsigned n1, unsigned i) {
  FamilySpec spec;
  spec.family = Family::gold;
  spec.n1 = n1;
  spec.i = i;
  spec.restriction = Restriction{Restriction::Kind::trace_zero, 1};
  return build_function(spec);
}

// Definitional oracle: the image of (x, y, z) -> F(x)+F(y)+F(z)+F(x+y+z).
std::set<u32> definitional_image(const VBF& f) {
  std::set<u32> out;
  for (u64 x = 0; x < f.domain(); ++x)
    for (u64 y = 0; y < f.domain(); ++y)
      for (u64 z = 0; z < f.domain(); ++z)
        out.insert(f.table[x] ^ f.table[y] ^ f.table[z] ^ f.table[x ^ y ^ z]);
  return out;
}

std::set<u32> report_covered_set(const DReport& r) {
  std::set<u32> covered;
  for (u64 v = 0; v < (u64{1} << r.m); ++v) covered.insert(static_cast<u32>(v));
  for (u32 miss : r.missing) covered.erase(miss);
  return covered;
}

}  // namespace

TEST_CASE("bruteforce checker") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("gold(5,1) as a (5,5)-function is a D-function") {
    CHECK(d_check_bruteforce(gold(5, 1)).is_d_function);
  }
  SUBCASE("restricted gold(7,1) is APN but not D") {
    const VBF f = restricted_gold_t0(7, 1).f;
    const DReport r = d_check_bruteforce(f, full);
    CHECK_FALSE(r.is_d_function);
    CHECK(r.missing_total > 0);
    CHECK(r.covered + r.missing_total == 128);
  }
  SUBCASE("constant functions cover only 0") {
    const VBF c = from_truth_table(3, 2, std::vector<u32>(8, 3));
    const DReport r = d_check_bruteforce(c, full);
    CHECK_FALSE(r.is_d_function);
    CHECK(r.covered == 1);
    CHECK(r.missing_total == 3);
  }
  SUBCASE("coverage equals the definitional triple image (mixed degrees)") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 15; ++iter) {
      const VBF f = iter % 2 ? random_table_vbf(4, 5, rng())
                             : random_bounded_degree_vbf(4, 4, 3, rng());
      const DReport r = d_check_bruteforce(f, full);
      REQUIRE(report_covered_set(r) == definitional_image(f));
    }
  }
  SUBCASE("oversized non-quadratic inputs are refused with a structured error") {
    const VBF f = random_bounded_degree_vbf(11, 11, 3, 3);
    try {
      d_check_bruteforce(f);
      FAIL("expected a size-limit error");
    } catch (const error& e) {
      CHECK(e.kind() == errc::size_limit);
      CHECK(std::string(e.what()).find("ddt") != std::string::npos);
    }
  }
}

TEST_CASE("ddt checker") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("bijective linear function covers only 0") {
    QuadraticAnf lin;
    lin.n = 4;
    lin.m = 4;
    lin.a_lin = {1, 2, 4, 8};
    const DReport r = d_check_ddt(from_anf(lin), full);
    CHECK_FALSE(r.is_d_function);
    CHECK(r.covered == 1);
  }
  SUBCASE("gold(5,1) is D by the ddt route") { CHECK(d_check_ddt(gold(5, 1)).is_d_function); }
  SUBCASE("agrees with bruteforce on random functions") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 60; ++iter) {
      const unsigned n = 3 + iter % 4;
      const unsigned m = 2 + iter % 7;
      const VBF f = random_table_vbf(n, m, rng());
      const DReport a = d_check_bruteforce(f, full);
      const DReport b = d_check_ddt(f, full);
      REQUIRE(a.is_d_function == b.is_d_function);
      REQUIRE(a.missing == b.missing);
    }
  }
}

TEST_CASE("moment4 checker") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("zero function: transform vanishes off 0") {
    const VBF zero = from_truth_table(3, 3, std::vector<u32>(8, 0));
    const DReport r = d_check_moment4(zero, full);
    CHECK_FALSE(r.is_d_function);
    CHECK(r.covered == 1);
  }
  SUBCASE("agrees with bruteforce on random functions") {
    std::mt19937_64 rng(29);
    for (int iter = 0; iter < 40; ++iter) {
      const VBF f = random_table_vbf(3 + iter % 3, 3 + iter % 5, rng());
      const DReport a = d_check_bruteforce(f, full);
      const DReport b = d_check_moment4(f, full);
      REQUIRE(a.is_d_function == b.is_d_function);
      REQUIRE(a.missing == b.missing);
    }
  }
  SUBCASE("b = 0 transform value counts degenerate triples exactly for APN maps") {
    for (unsigned n : {4u, 5u}) {
      const VBF f = gold(n, 1);
      std::vector<i128> h = walsh_moment_vector(f, 4, 1);
      hadamard_inplace(h);
      // Degenerate triples {x=y} u {x=z} u {y=z} by inclusion-exclusion.
      const i128 degenerate = 3 * (i128{1} << (2 * n)) - (i128{1} << (n + 1));
      CHECK(h[0] == (i128{1} << (2 * n)) * degenerate);
    }
  }
  SUBCASE("b_filter restricts the verdict scope") {
    const VBF zero = from_truth_table(3, 3, std::vector<u32>(8, 0));
    const DReport only_zero = d_check_moment4(zero, full, std::vector<u32>{0});
    CHECK(only_zero.missing_total == 0);
    const DReport with_one = d_check_moment4(zero, full, std::vector<u32>{0, 1});
    CHECK(with_one.missing_total == 1);
  }
  SUBCASE("size guard") {
    CHECK_THROWS_AS(d_check_moment4(random_table_vbf(15, 15, 1)), error);
  }
}

TEST_CASE("moment3 checker (quadratic)") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("rejects non-quadratic input") {
    const VBF f = random_bounded_degree_vbf(4, 4, 3, 41);
    REQUIRE(degree(f) == 3);
    CHECK_THROWS_AS(d_check_moment3_quadratic(f), error);
  }
  SUBCASE("normalized APN quadratic: b=0 moment equals 2^(n+m)(3*2^n - 2)") {
    for (unsigned n : {4u, 5u}) {
      const VBF f = gold(n, 1);
      std::vector<i128> h = walsh_moment_vector(f, 3, 1);
      hadamard_inplace(h);
      CHECK(h[0] == (i128{1} << (2 * n)) * (3 * (i128{1} << n) - 2));
    }
  }
  SUBCASE("agrees with bruteforce on random quadratics") {
    for (u64 seed = 100; seed < 160; ++seed) {
      const VBF f = from_anf(random_quadratic(2 + seed % 5, 1 + seed % 8, seed));
      const DReport a = d_check_bruteforce(f, full);
      const DReport b = d_check_moment3_quadratic(f, full);
      REQUIRE(a.is_d_function == b.is_d_function);
      REQUIRE(a.missing == b.missing);
    }
  }
  SUBCASE("restricted gold(6,1) is a D-function") {
    CHECK(d_check_moment3_quadratic(restricted_gold_t0(6, 1).f).is_d_function);
  }
}

TEST_CASE("hyperplane checker (quadratic)") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("agrees with bruteforce on random quadratics") {
    for (u64 seed = 200; seed < 400; ++seed) {
      const VBF f = from_anf(random_quadratic(2 + seed % 7, 1 + seed % 8, seed));
      const DReport a = d_check_bruteforce(f, full);
      const DReport b = d_check_hyperplane_quadratic(f, full);
      REQUIRE(a.is_d_function == b.is_d_function);
      REQUIRE(a.missing == b.missing);
    }
  }
  SUBCASE("restricted gold(9,1) is a D-function") {
    CHECK(d_check_hyperplane_quadratic(restricted_gold_t0(9, 1).f).is_d_function);
  }
  SUBCASE("verdict and missing set are independent of the choice of K") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 10; ++iter) {
      const VBF f = from_anf(random_quadratic(5, 6, 7000 + iter));
      const DReport base = d_check_hyperplane_quadratic(f, full);
      for (int rep = 0; rep < 10; ++rep) {
        // Random hyperplane: kernel basis of a random nonzero linear form.
        const u32 mask = 1 + static_cast<u32>(rng()) % 31;
        SubspaceBasis k;
        k.ambient_n = 5;
        const unsigned pivot = static_cast<unsigned>(std::countr_zero(mask));
        for (unsigned j = 0; j < 5; ++j) {
          if (j == pivot) continue;
          k.vectors.push_back((u32{1} << j) ^ (((mask >> j) & 1) ? (u32{1} << pivot) : 0));
        }
        const DReport alt = d_check_hyperplane_quadratic(f, full, &k);
        REQUIRE(alt.is_d_function == base.is_d_function);
        REQUIRE(alt.missing == base.missing);
      }
    }
  }
  SUBCASE("wrong-rank K is rejected") {
    const VBF f = from_anf(random_quadratic(5, 5, 1));
    SubspaceBasis k;
    k.ambient_n = 5;
    k.vectors = {1, 2};
    CHECK_THROWS_AS(d_check_hyperplane_quadratic(f, {}, &k), error);
  }
  SUBCASE("rejects non-quadratic input") {
    CHECK_THROWS_AS(d_check_hyperplane_quadratic(random_bounded_degree_vbf(4, 4, 3, 41)), error);
  }
}

TEST_CASE("anf-span checker") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("affine functions cover only 0") {
    QuadraticAnf affine;
    affine.n = 4;
    affine.m = 3;
    affine.a_lin = {1, 2, 4, 7};
    const DReport r = d_check_anf_span(affine, full);
    CHECK_FALSE(r.is_d_function);
    CHECK(r.covered == 1);
  }
  SUBCASE("agrees with the hyperplane checker on random quadratics") {
    for (u64 seed = 500; seed < 600; ++seed) {
      const QuadraticAnf anf = random_quadratic(2 + seed % 5, 1 + seed % 8, seed);
      const VBF f = from_anf(anf);
      const DReport a = d_check_hyperplane_quadratic(f, full);
      const DReport b = d_check_anf_span(anf, full);
      REQUIRE(a.is_d_function == b.is_d_function);
      REQUIRE(a.missing == b.missing);
    }
  }
  SUBCASE("gold(5,1) via its extracted ANF") {
    CHECK(d_check_anf_span(to_quadratic_anf(gold(5, 1))).is_d_function);
  }
}

TEST_CASE("apn check from the ANF") {
  SUBCASE("agrees with the DDT route on random quadratics") {
    for (u64 seed = 700; seed < 900; ++seed) {
      const QuadraticAnf anf = random_quadratic(2 + seed % 7, 1 + seed % 8, seed);
      REQUIRE(apn_check_anf(anf).apn == is_apn(from_anf(anf), 1));
    }
  }
  SUBCASE("gold ANFs pass") {
    CHECK(apn_check_anf(to_quadratic_anf(gold(5, 1))).apn);
    CHECK_FALSE(apn_check_anf(to_quadratic_anf(gold(4, 2))).apn);
  }
  SUBCASE("a_12 = a_34 with all else zero defeats APN, with a valid witness") {
    QuadraticAnf anf;
    anf.n = 4;
    anf.m = 4;
    anf.a_lin.assign(4, 0);
    anf.set_quad(0, 1, 9);
    anf.set_quad(2, 3, 9);
    const ApnAnfResult res = apn_check_anf(anf);
    CHECK_FALSE(res.apn);
    REQUIRE(res.counterexample.has_value());
    const UltraTransitiveSet& I = *res.counterexample;
    CHECK(I.is_ultra_transitive());
    CHECK_FALSE(I.reduced().empty());
    CHECK(reduced_coefficient_sum(anf, I) == 0);
    // The witness directions really produce a vanishing second derivative.
    const VBF f = from_anf(anf);
    CHECK(second_derivative(f, res.alpha1, res.alpha2, 0) == 0);
    CHECK(res.alpha1 != res.alpha2);
    CHECK(res.alpha1 != 0);
    CHECK(res.alpha2 != 0);
    // Hand expansion: D^2_{e1+e3, e2+e4} F(0) = a12 + a14 + a32 + a34 = 0.
    CHECK(second_derivative(f, 0b0101, 0b1010, 0) == 0);
  }
  SUBCASE("ultra-transitive closure property of product sets") {
    const UltraTransitiveSet I = UltraTransitiveSet::from_directions(6, 0b101001, 0b001010);
    CHECK(I.is_ultra_transitive());
    for (const auto& [i, j] : I.reduced()) CHECK(I.pairs.count({i, j}) == 1);
  }
}

TEST_CASE("plateaued checker") {
  DCheckOptions full;
  full.full_missing = true;
  SUBCASE("agrees with bruteforce on random quadratics") {
    for (u64 seed = 1000; seed < 1060; ++seed) {
      const VBF f = from_anf(random_quadratic(2 + seed % 5, 1 + seed % 8, seed));
      const DReport a = d_check_bruteforce(f, full);
      const DReport b = d_check_plateaued(f, full);
      REQUIRE(a.is_d_function == b.is_d_function);
      REQUIRE(a.missing == b.missing);
    }
  }
  SUBCASE("matches the direct pair image for normalized plateaued functions") {
    for (u64 seed = 1100; seed < 1120; ++seed) {
      const VBF f = from_anf(random_quadratic(4, 5, seed));  // a_0 = 0, normalized
      std::set<u32> pair_image;
      for (u64 x = 0; x < f.domain(); ++x)
        for (u64 y = 0; y < f.domain(); ++y)
          pair_image.insert(f.table[x] ^ f.table[y] ^ f.table[x ^ y]);
      const DReport r = d_check_plateaued(f, full);
      REQUIRE(report_covered_set(r) == pair_image);
    }
  }
  SUBCASE("rejects non-plateaued input") {
    const VBF f = random_bounded_degree_vbf(4, 4, 3, 6);
    REQUIRE_FALSE(plateaued_profile(f, false, 1).is_plateaued);
    CHECK_THROWS_AS(d_check_plateaued(f), error);
  }
}

TEST_CASE("omega report") {
  SUBCASE("restricted gold(5,1): structure holds and verdict matches bruteforce") {
    const VBF f = restricted_gold_t0(5, 1).f;
    const OmegaReport omega = omega_report(f, 1);
    CHECK(omega.bent_count == 16);     // 2^n
    CHECK(omega.nonbent_count == 15);  // 2^n - 1
    CHECK(omega.is_d_function == d_check_bruteforce(f).is_d_function);
  }
  SUBCASE("restricted gold(3,i) is never a D-function (n = 2)") {
    for (unsigned i : {1u, 2u}) {
      const VBF f = restricted_gold_t0(3, i).f;
      const OmegaReport omega = omega_report(f, 1);
      CHECK_FALSE(omega.is_d_function);
      CHECK_FALSE(d_check_bruteforce(f).is_d_function);
    }
  }
  SUBCASE("hyperplane restrictions other than T_0 behave the same at n = 2") {
    FamilySpec spec;
    spec.family = Family::gold;
    spec.n1 = 3;
    spec.i = 1;
    spec.restriction = Restriction{Restriction::Kind::hyperplane, 3};
    const VBF f = build_function(spec).f;
    CHECK_FALSE(omega_report(f, 1).is_d_function);
  }
  SUBCASE("precondition failures name the broken assumption") {
    try {
      omega_report(gold(5, 1), 1);  // m = n, not n+1
      FAIL("expected a structural mismatch");
    } catch (const error& e) {
      CHECK(e.kind() == errc::structural_mismatch);
      CHECK(std::string(e.what()).find("n+1") != std::string::npos);
    }
  }
}

TEST_CASE("dimension bounds") {
  SUBCASE("general bound values") {
    CHECK(dimension_bounds(3, false).m_max == 3);  // |AFF_{2,3}| = 14 => 2^m <= 15
    CHECK(dimension_bounds(7, false).m_max == 16);
    CHECK(dimension_bounds(7, false).m_max < 3 * 7 - 4);
    CHECK(dimension_bounds(7, false).m_min == 7);
  }
  SUBCASE("quadratic bound values") {
    CHECK(dimension_bounds(7, true).m_max == 11);  // m < 2n - 2 = 12
    CHECK(dimension_bounds(4, true).m_max == 5);
  }
  SUBCASE("domain limits") {
    CHECK_THROWS_AS(dimension_bounds(2, false), error);
    CHECK_THROWS_AS(dimension_bounds(3, true), error);
  }
}

TEST_CASE("second-order spectrum") {
  const VBF f = random_table_vbf(4, 4, 99);
  SUBCASE("gamma = 0 telescopes to omega = 0") {
    const std::vector<u64> counts = second_order_spectrum(f, 0, 5);
    CHECK(counts[0] == 16);
    for (u64 w = 1; w < counts.size(); ++w) CHECK(counts[w] == 0);
  }
  SUBCASE("rows sum to 2^n") {
    for (u32 gamma = 0; gamma < 16; ++gamma)
      for (u32 eta = 0; eta < 16; ++eta) {
        u64 sum = 0;
        for (u64 c : second_order_spectrum(f, gamma, eta)) sum += c;
        REQUIRE(sum == 16);
      }
  }
  SUBCASE("quadratic rows concentrate on a single omega") {
    const VBF q = from_anf(random_quadratic(4, 4, 13));
    for (u32 gamma = 1; gamma < 16; ++gamma)
      for (u32 eta = 1; eta < 16; ++eta) {
        const std::vector<u64> counts = second_order_spectrum(q, gamma, eta);
        u64 nonzero = 0;
        for (u64 c : counts)
          if (c) {
            ++nonzero;
            REQUIRE(c == 16);
          }
        REQUIRE(nonzero == 1);
      }
  }
  SUBCASE("D-property restated: every nonzero omega is hit by some (gamma, eta)") {
    const VBF g = gold(4, 1);
    Coverage hit(4);
    for (u32 gamma = 0; gamma < 16; ++gamma)
      for (u32 eta = 0; eta < 16; ++eta) {
        const std::vector<u64> counts = second_order_spectrum(g, gamma, eta);
        for (u64 w = 0; w < counts.size(); ++w)
          if (counts[w]) hit.add(static_cast<u32>(w));
      }
    CHECK(hit.full() == d_check_bruteforce(g).is_d_function);
  }
}

TEST_CASE("moment identity suite") {
  SUBCASE("identities hold on mixed random functions") {
    std::mt19937_64 rng(2718);
    for (int iter = 0; iter < 25; ++iter) {
      const unsigned n = 2 + iter % 3;
      const unsigned m = 2 + iter % 4;
      VBF f;
      if (iter % 3 == 0)
        f = random_table_vbf(n, m, rng());
      else if (iter % 3 == 1)
        f = from_anf(random_quadratic(n, m, rng()));
      else
        f = n >= 3 ? random_bounded_degree_vbf(n, m, 3, rng()) : random_table_vbf(n, m, rng());
      const MomentIdentityReport rep = verify_moment_identities(f);
      REQUIRE(rep.fourth_moment.applicable);
      REQUIRE(rep.all_applicable_hold());
    }
  }
  SUBCASE("identity 2 is skipped with a reason on non-quadratic input") {
    const VBF f = random_bounded_degree_vbf(4, 4, 3, 41);
    const MomentIdentityReport rep = verify_moment_identities(f);
    CHECK_FALSE(rep.third_moment_quadratic.applicable);
    CHECK(!rep.third_moment_quadratic.skip_reason.empty());
  }
  SUBCASE("identity 2 is skipped on unnormalized quadratics") {
    QuadraticAnf anf = random_quadratic(3, 3, 5);
    anf.a_const = 1;
    const MomentIdentityReport rep = verify_moment_identities(from_anf(anf));
    CHECK_FALSE(rep.third_moment_quadratic.applicable);
  }
  SUBCASE("size guard") {
    CHECK_THROWS_AS(verify_moment_identities(random_table_vbf(12, 12, 1)), error);
  }
}

TEST_CASE("router and report shape") {
  DCheckOptions opts;
  opts.witnesses = true;
  SUBCASE("router handles quadratic and non-quadratic inputs") {
    CHECK(check_d(gold(5, 1), opts).method == DMethod::hyperplane_quadratic);
    const VBF f = random_table_vbf(4, 4, 2);
    CHECK(check_d(f, opts).method == DMethod::bruteforce);
    const VBF g = random_bounded_degree_vbf(9, 9, 3, 2);
    CHECK(check_d(g, opts).method == DMethod::ddt);
  }
  SUBCASE("missing lists are truncated to 32 without the flag") {
    const VBF c = from_truth_table(3, 7, std::vector<u32>(8, 0));
    const DReport r = d_check_bruteforce(c, opts);
    CHECK(r.missing.size() == 32);
    CHECK(r.missing_truncated);
    CHECK(r.missing_total == 127);
    DCheckOptions full = opts;
    full.full_missing = true;
    const DReport rf = d_check_bruteforce(c, full);
    CHECK(rf.missing.size() == 127);
    CHECK_FALSE(rf.missing_truncated);
  }
  SUBCASE("witnesses replay on every scan method") {
    const VBF f = restricted_gold_t0(5, 1).f;
    const VBF g = normalize(f);
    for (const DReport& r :
         {d_check_bruteforce(f, opts), d_check_ddt(f, opts), d_check_hyperplane_quadratic(f, opts),
          d_check_anf_span(to_quadratic_anf(f), opts)}) {
      REQUIRE(!r.witnesses.empty());
      for (const auto& [val, w] : r.witnesses)
        REQUIRE(second_derivative(g, w.a, w.b, w.x) == val);
    }
  }
  SUBCASE("verdict equivalences inside the report") {
    const DReport r = d_check_bruteforce(restricted_gold_t0(7, 1).f);
    CHECK(r.is_d_function == (r.covered == (u64{1} << r.m)));
    CHECK(r.is_d_function == (r.missing_total == 0));
  }
}
