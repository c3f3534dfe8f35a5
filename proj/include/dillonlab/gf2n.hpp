#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dillonlab/common.hpp"

namespace dillonlab {

/// Arithmetic context for GF(2^n), 1 <= n <= 32. Elements are n-bit words in
/// the polynomial basis {1, x, ..., x^(n-1)}: bit i of a word is the
/// coefficient of x^i. Immutable after construction; all operations are pure.
struct FieldCtx {
  unsigned n = 0;
  u64 modulus = 0;  // (n+1)-bit word, degree-n irreducible polynomial
  bool generator_checked = false;
};

/// Ordered list of linearly independent n-bit vectors spanning a subspace.
struct SubspaceBasis {
  unsigned ambient_n = 0;
  std::vector<u32> vectors;
  unsigned dim() const { return static_cast<unsigned>(vectors.size()); }
};

/// Builds a field context. Without an explicit modulus, picks the
/// lexicographically smallest irreducible polynomial of degree n.
/// Throws invalid_modulus for a reducible or wrong-degree modulus.
FieldCtx make_field(unsigned n, std::optional<u64> modulus = std::nullopt);

/// Carry-less product reduced modulo the context modulus.
u32 mul(const FieldCtx& ctx, u32 a, u32 b);

/// a^e by square-and-multiply; pow(a, 0) = 1 for every a, including 0.
u32 pow(const FieldCtx& ctx, u32 a, u64 e);

/// Absolute trace Tr_n(a) = sum of a^(2^i), i = 0..n-1; result is 0 or 1.
u32 abs_trace(const FieldCtx& ctx, u32 a);

/// Relative trace Tr^n_m(a), m | n, expressed as an m-bit word of the
/// subfield GF(2^m). The subfield representation uses the basis
/// {1, beta, ..., beta^(m-1)} where beta is the smallest element of the
/// subfield that is a root of the default degree-m modulus (for m = n, this
/// is the ambient representation itself).
u32 rel_trace(const FieldCtx& ctx, unsigned m, u32 a);

/// Basis (dimension n-1) of the kernel of the absolute trace, deterministic:
/// Gaussian elimination on the trace form, pivot = lowest set bit.
SubspaceBasis trace_zero_basis(const FieldCtx& ctx);

/// Basis of the hyperplane { x : Tr_n(alpha * x) = 0 }, alpha != 0.
SubspaceBasis hyperplane_basis(const FieldCtx& ctx, u32 alpha);

// --- polynomial helpers (bit i of a word = coefficient of x^i) -------------

int poly_degree(u64 p);
bool poly_irreducible(u64 p);
u64 smallest_irreducible(unsigned n);
std::string poly_to_string(u64 p);  // e.g. "x^3+x+1"
std::string word_to_hex(u64 w);     // e.g. "0xb"

}  // namespace dillonlab
