#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dillonlab/gf2n.hpp"

namespace dillonlab {

/// Truth table of an (n,m)-function: 2^n entries, each an m-bit word.
/// Immutable by convention once built; all operations below return new values.
struct VBF {
  unsigned n = 0;
  unsigned m = 0;
  std::vector<u32> table;
  std::string provenance;
  std::optional<u64> field_modulus;  // set when built over GF(2^k)

  u32 operator()(u32 x) const { return table[x]; }
  u64 domain() const { return u64{1} << n; }
};

/// Quadratic ANF over F_2^m: F(x) = a0 + sum a_k x_k + sum_{i<j} a_ij x_i x_j.
/// Indices are 0-based here; bit i of an input word is variable x_(i+1) of the
/// usual 1-based write-up. a_quad keys satisfy i < j; reads are symmetric.
struct QuadraticAnf {
  unsigned n = 0;
  unsigned m = 0;
  std::map<std::pair<unsigned, unsigned>, u32> a_quad;
  std::vector<u32> a_lin;  // size n
  u32 a_const = 0;

  u32 quad(unsigned i, unsigned j) const {
    if (i == j) return 0;
    if (i > j) std::swap(i, j);
    auto it = a_quad.find({i, j});
    return it == a_quad.end() ? 0 : it->second;
  }
  void set_quad(unsigned i, unsigned j, u32 c);
};

/// x -> (M x) + offset, with M stored as one dim_out-bit word per input bit
/// (rows[i] = image of basis vector e_i); applying the map XORs the rows
/// selected by the bits of x.
struct AffineMap {
  unsigned dim_in = 0;
  unsigned dim_out = 0;
  std::vector<u32> rows;
  u32 offset = 0;

  u32 operator()(u32 x) const {
    u32 acc = offset;
    while (x) {
      acc ^= rows[std::countr_zero(x)];
      x &= x - 1;
    }
    return acc;
  }
};

AffineMap identity_affine(unsigned dim);
bool affine_invertible(const AffineMap& a);

VBF from_truth_table(unsigned n, unsigned m, std::vector<u32> words);

/// (n,n)-function from a univariate polynomial sum b_e X^e over the field.
VBF from_univariate(const FieldCtx& ctx, const std::map<u64, u32>& coeffs);

VBF from_anf(const QuadraticAnf& anf);

/// Full Moebius transform of the table: coefficient a_I (indexed by the mask
/// of I) is the XOR of table[x] over x with support contained in I.
std::vector<u32> to_anf(const VBF& f);

/// Quadratic ANF extracted from the table; throws precondition if deg > 2.
QuadraticAnf to_quadratic_anf(const VBF& f);

unsigned degree(const VBF& f);
bool is_quadratic(const VBF& f);

/// (k,m)-function y -> f(sum y_i basis[i]); basis must have full rank.
VBF restrict_to(const VBF& f, const SubspaceBasis& basis);

/// g(x) = f(x) + f(0), so g(0) = 0.
VBF normalize(const VBF& f);

/// x -> a1(f(a2(x))) + add(x); a1, a2 must be invertible.
VBF ea_transform(const VBF& f, const AffineMap& a1, const AffineMap& a2, const AffineMap& add);

/// f(x) + f(x+a) + f(x+b) + f(x+a+b); degenerate direction pairs give 0.
inline u32 second_derivative(const VBF& f, u32 a, u32 b, u32 x) {
  return f.table[x] ^ f.table[x ^ a] ^ f.table[x ^ b] ^ f.table[x ^ a ^ b];
}

}  // namespace dillonlab
