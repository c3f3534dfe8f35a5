#include "doctest.h"

#include <random>
#include <set>

#include "dillonlab/gf2n.hpp"

using namespace dillonlab;

namespace {

// Independent irreducibility oracle: trial division by every polynomial of
// degree 1 .. deg/2 (schoolbook remainder, nothing shared with the library
// path, which uses the Rabin test).
bool oracle_irreducible(u64 p) {
  const int d = poly_degree(p);
  if (d < 1) return false;
  for (int dd = 1; dd <= d / 2; ++dd) {
    for (u64 q = u64{1} << dd; q < (u64{1} << (dd + 1)); ++q) {
      u64 r = p;
      while (poly_degree(r) >= dd) r ^= q << (poly_degree(r) - dd);
      if (r == 0) return false;
    }
  }
  return true;
}

// Smallest irreducible with a nonzero constant term (x itself cannot serve
// as a field modulus).
u64 oracle_smallest_irreducible(unsigned n) {
  for (u64 p = (u64{1} << n) | 1;; p += 2)
    if (oracle_irreducible(p)) return p;
}

}  // namespace

TEST_CASE("default modulus is the smallest irreducible polynomial") {
  CHECK(make_field(3).modulus == 0b1011);  // x^3 + x + 1
  CHECK(make_field(1).modulus == 0b11);    // x + 1
  for (unsigned n = 1; n <= 12; ++n)
    CHECK(make_field(n).modulus == oracle_smallest_irreducible(n));
}

TEST_CASE("explicit moduli are validated") {
  CHECK(make_field(8, u64{0b100011011}).modulus == 0b100011011);  // AES polynomial
  CHECK(oracle_irreducible(0b100011011));
  CHECK_THROWS_AS(make_field(3, u64{0b1001}), error);   // x^3+1 = (x+1)(x^2+x+1)
  CHECK_THROWS_AS(make_field(3, u64{0b10011}), error);  // degree 4, not 3
  CHECK_THROWS_AS(make_field(0), error);
  CHECK_THROWS_AS(make_field(33), error);
}

TEST_CASE("multiplication in GF(2^3)") {
  const FieldCtx ctx = make_field(3);
  CHECK(mul(ctx, 0b010, 0b100) == 0b011);  // x * x^2 = x^3 = x + 1
  for (u32 a = 0; a < 8; ++a) {
    CHECK(mul(ctx, a, 1) == a);
    CHECK(mul(ctx, a, 0) == 0);
  }
}

TEST_CASE("field axioms hold on random triples") {
  std::mt19937_64 rng(42);
  for (unsigned n : {4u, 7u, 11u, 16u}) {
    const FieldCtx ctx = make_field(n);
    const u32 mask = (u32{1} << n) - 1;
    for (int iter = 0; iter < 10000; ++iter) {
      const u32 a = static_cast<u32>(rng()) & mask;
      const u32 b = static_cast<u32>(rng()) & mask;
      const u32 c = static_cast<u32>(rng()) & mask;
      REQUIRE(mul(ctx, a, b) == mul(ctx, b, a));
      REQUIRE(mul(ctx, mul(ctx, a, b), c) == mul(ctx, a, mul(ctx, b, c)));
      REQUIRE(mul(ctx, a, b ^ c) == (mul(ctx, a, b) ^ mul(ctx, a, c)));
    }
  }
}

TEST_CASE("pow: identities and Lagrange") {
  const FieldCtx ctx3 = make_field(3);
  CHECK(pow(ctx3, 0b010, 7) == 1);
  CHECK(pow(ctx3, 0, 3) == 0);
  CHECK(pow(ctx3, 0, 0) == 1);
  for (unsigned n = 1; n <= 12; ++n) {
    const FieldCtx ctx = make_field(n);
    const u64 order = (u64{1} << n) - 1;
    for (u32 a = 1; a < (u32{1} << n); ++a) {
      REQUIRE(pow(ctx, a, 1) == a);
      REQUIRE(pow(ctx, a, order) == 1);
    }
  }
}

TEST_CASE("absolute trace: linearity, values, kernel size") {
  for (unsigned n = 1; n <= 12; ++n) {
    const FieldCtx ctx = make_field(n);
    CHECK(abs_trace(ctx, 0) == 0);
    if (n % 2 == 1) CHECK(abs_trace(ctx, 1) == 1);  // Tr(1) = n mod 2
    u64 zeros = 0;
    for (u32 a = 0; a < (u32{1} << n); ++a) {
      const u32 t = abs_trace(ctx, a);
      REQUIRE(t <= 1);
      if (t == 0) ++zeros;
    }
    CHECK(zeros == (u64{1} << n) / 2);
  }
  // F_2-linearity on random pairs.
  const FieldCtx ctx = make_field(9);
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 1000; ++iter) {
    const u32 a = static_cast<u32>(rng()) & 0x1ff;
    const u32 b = static_cast<u32>(rng()) & 0x1ff;
    CHECK(abs_trace(ctx, a ^ b) == (abs_trace(ctx, a) ^ abs_trace(ctx, b)));
  }
}

TEST_CASE("relative trace") {
  const FieldCtx ctx4 = make_field(4);
  SUBCASE("m = n is the identity") {
    for (u32 a = 0; a < 16; ++a) CHECK(rel_trace(ctx4, 4, a) == a);
  }
  SUBCASE("m = 1 equals the absolute trace") {
    for (u32 a = 0; a < 16; ++a) CHECK(rel_trace(ctx4, 1, a) == abs_trace(ctx4, a));
  }
  SUBCASE("image over GF(2^4) with m = 2 is the whole subfield") {
    std::set<u32> image;
    for (u32 a = 0; a < 16; ++a) {
      const u32 t = rel_trace(ctx4, 2, a);
      CHECK(t < 4);
      image.insert(t);
    }
    CHECK(image == std::set<u32>{0, 1, 2, 3});
  }
  SUBCASE("transitivity with the absolute trace") {
    // Tr_4 = Tr_2 of Tr^4_2 through the subfield representation.
    const FieldCtx ctx2 = make_field(2);
    for (u32 a = 0; a < 16; ++a)
      CHECK(abs_trace(ctx2, rel_trace(ctx4, 2, a)) == abs_trace(ctx4, a));
  }
  SUBCASE("m must divide n") { CHECK_THROWS_AS(rel_trace(ctx4, 3, 1), error); }
}

TEST_CASE("trace-zero basis") {
  for (unsigned n : {3u, 4u, 7u, 8u}) {
    const FieldCtx ctx = make_field(n);
    const SubspaceBasis basis = trace_zero_basis(ctx);
    CHECK(basis.dim() == n - 1);
    const std::vector<u32> span = f2_span_points(basis.vectors);
    CHECK(span.size() == (u64{1} << (n - 1)));
    std::set<u32> distinct(span.begin(), span.end());
    CHECK(distinct.size() == span.size());
    for (u32 w : span) CHECK(abs_trace(ctx, w) == 0);
    // Deterministic across rebuilds.
    CHECK(trace_zero_basis(ctx).vectors == basis.vectors);
  }
}

TEST_CASE("hyperplane basis") {
  const FieldCtx ctx = make_field(5);
  CHECK(hyperplane_basis(ctx, 1).vectors == trace_zero_basis(ctx).vectors);
  CHECK_THROWS_AS(hyperplane_basis(ctx, 0), error);
  for (u32 alpha = 1; alpha < 32; ++alpha) {
    const SubspaceBasis basis = hyperplane_basis(ctx, alpha);
    CHECK(basis.dim() == 4);
    const std::vector<u32> span = f2_span_points(basis.vectors);
    std::set<u32> distinct(span.begin(), span.end());
    CHECK(distinct.size() == 16);
    for (u32 w : span) CHECK(abs_trace(ctx, mul(ctx, alpha, w)) == 0);
  }
}

TEST_CASE("polynomial rendering") {
  CHECK(poly_to_string(0b1011) == "x^3+x+1");
  CHECK(poly_to_string(0b11) == "x+1");
  CHECK(word_to_hex(0b1011) == "0xb");
}
