#pragma once

#include <optional>
#include <string>

#include "dillonlab/vbf.hpp"

namespace dillonlab {

/// Gold map X^(2^i + 1) over GF(2^n1); APN exactly when gcd(i, n1) = 1.
VBF gold(unsigned n1, unsigned i, std::optional<u64> modulus = std::nullopt);

/// X^3 + Tr_{n1}(X^9) over GF(2^n1), the trace bit embedded as the field 0/1.
VBF x3_tr9(unsigned n1, std::optional<u64> modulus = std::nullopt);

/// Seeded quadratic ANF: coefficients drawn from std::mt19937_64(seed), one
/// draw per coefficient masked to m bits, quadratic pairs (i,j) in
/// lexicographic order first, then the n linear terms; a_0 = 0. With a
/// density in [0,1], each coefficient is preceded by one gating draw and
/// zeroed when the gate misses.
QuadraticAnf random_quadratic(unsigned n, unsigned m, u64 seed,
                              std::optional<double> density = std::nullopt);

enum class Family { gold, x3_tr9, univariate, truth_table, anf, random_quadratic };

struct Restriction {
  enum class Kind { trace_zero, hyperplane } kind = Kind::trace_zero;
  u32 alpha = 1;
};

/// Parsed form of the CLI function grammar:
///   gold:n=9,i=1[,restrict=t0|restrict=h:HEX][,modulus=HEX]
///   x3tr9:n=9[,restrict=...][,modulus=HEX]
///   tt:<path>   anf:<path>   rand2:n=6,m=8,seed=42[,density=0.5]
struct FamilySpec {
  Family family = Family::gold;
  unsigned n1 = 0;
  unsigned i = 1;
  unsigned m = 0;
  u64 seed = 0;
  std::optional<double> density;
  std::string path;
  std::optional<Restriction> restriction;
  std::optional<u64> modulus;

  std::string canonical() const;
  /// gcd(i, n1) = 1, the condition under which the Gold family is APN.
  bool apn_expected() const;
};

FamilySpec parse_family_spec(const std::string& text);

struct BuiltFunction {
  VBF f;
  std::optional<QuadraticAnf> anf;  // present when the source was an ANF
  std::string warning;              // e.g. Gold with gcd(i, n1) != 1
};

/// Materializes the spec: builds the base family, applies the restriction,
/// and stamps the canonical spec string (plus modulus) into the provenance so
/// the table can be rebuilt from the provenance alone.
BuiltFunction build_function(const FamilySpec& spec);

}  // namespace dillonlab
