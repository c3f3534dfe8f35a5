#include "dillonlab/gf2n.hpp"

#include <algorithm>
#include <sstream>

namespace dillonlab {

int poly_degree(u64 p) { return p ? 63 - std::countl_zero(p) : -1; }

namespace {

u64 poly_mod(u64 a, u64 mod) {
  const int dm = poly_degree(mod);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= mod << (d - dm);
  return a;
}

u64 poly_mulmod(u64 a, u64 b, u64 mod) {
  u64 acc = 0;
  while (b) {
    const int i = std::countr_zero(b);
    b &= b - 1;
    acc ^= a << i;
  }
  return poly_mod(acc, mod);
}

u64 poly_gcd(u64 a, u64 b) {
  while (b) {
    const u64 r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// x^(2^e) mod p by e successive squarings.
u64 frob_power_of_x(unsigned e, u64 p) {
  u64 r = poly_mod(0b10, p);
  for (unsigned i = 0; i < e; ++i) r = poly_mulmod(r, r, p);
  return r;
}

}  // namespace

bool poly_irreducible(u64 p) {
  const int d = poly_degree(p);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((p & 1) == 0) return false;  // divisible by x
  // Rabin: x^(2^d) = x mod p, and gcd(x^(2^(d/q)) - x, p) = 1 for prime q | d.
  if (frob_power_of_x(static_cast<unsigned>(d), p) != 0b10) return false;
  unsigned rest = static_cast<unsigned>(d);
  for (unsigned q = 2; q * q <= rest; ++q) {
    if (rest % q) continue;
    while (rest % q == 0) rest /= q;
    const u64 g = poly_gcd(frob_power_of_x(static_cast<unsigned>(d) / q, p) ^ 0b10, p);
    if (g != 1) return false;
  }
  if (rest > 1) {
    const u64 g = poly_gcd(frob_power_of_x(static_cast<unsigned>(d) / rest, p) ^ 0b10, p);
    if (g != 1) return false;
  }
  return true;
}

u64 smallest_irreducible(unsigned n) {
  for (u64 p = (u64{1} << n) | 1; p < (u64{1} << (n + 1)); p += 2)
    if (poly_irreducible(p)) return p;
  throw error(errc::internal, "no irreducible polynomial of degree " + std::to_string(n));
}

std::string poly_to_string(u64 p) {
  if (p == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = poly_degree(p); d >= 0; --d) {
    if (!((p >> d) & 1)) continue;
    if (!first) os << "+";
    first = false;
    if (d == 0)
      os << "1";
    else if (d == 1)
      os << "x";
    else
      os << "x^" << d;
  }
  return os.str();
}

std::string word_to_hex(u64 w) {
  std::ostringstream os;
  os << "0x" << std::hex << w;
  return os.str();
}

FieldCtx make_field(unsigned n, std::optional<u64> modulus) {
  if (n < 1 || n > 32)
    throw error(errc::invalid_arguments, "field bit-length must be in [1, 32], got " + std::to_string(n));
  FieldCtx ctx;
  ctx.n = n;
  if (modulus) {
    if (poly_degree(*modulus) != static_cast<int>(n))
      throw error(errc::invalid_modulus,
                  "modulus " + word_to_hex(*modulus) + " does not have degree " + std::to_string(n));
    if (!poly_irreducible(*modulus))
      throw error(errc::invalid_modulus,
                  "modulus " + word_to_hex(*modulus) + " (" + poly_to_string(*modulus) + ") is reducible");
    ctx.modulus = *modulus;
  } else {
    ctx.modulus = smallest_irreducible(n);
  }
  ctx.generator_checked = true;
  return ctx;
}

u32 mul(const FieldCtx& ctx, u32 a, u32 b) {
  u64 acc = 0;
  u64 aw = a;
  u32 bw = b;
  while (bw) {
    const int i = std::countr_zero(bw);
    bw &= bw - 1;
    acc ^= aw << i;
  }
  // Reduce the carry-less product (degree <= 2n-2) modulo the field polynomial.
  for (int d = 2 * static_cast<int>(ctx.n) - 2; d >= static_cast<int>(ctx.n); --d)
    if ((acc >> d) & 1) acc ^= ctx.modulus << (d - ctx.n);
  return static_cast<u32>(acc);
}

u32 pow(const FieldCtx& ctx, u32 a, u64 e) {
  u32 result = 1;
  u32 base = a;
  while (e) {
    if (e & 1) result = mul(ctx, result, base);
    base = mul(ctx, base, base);
    e >>= 1;
  }
  return result;
}

u32 abs_trace(const FieldCtx& ctx, u32 a) {
  u32 t = a;
  u32 s = a;
  for (unsigned i = 1; i < ctx.n; ++i) {
    s = mul(ctx, s, s);
    t ^= s;
  }
  if (t > 1) throw error(errc::internal, "absolute trace left the prime field");
  return t;
}

namespace {

// Representation of the subfield GF(2^m) inside GF(2^n): basis powers of the
// smallest root beta of the default degree-m modulus, plus the echelon data
// needed to express subfield elements in that basis.
struct SubfieldRep {
  std::vector<u32> beta_powers;   // beta^j as ambient n-bit words
  std::vector<u32> echelon;       // reduced rows
  std::vector<unsigned> pivots;   // ambient pivot bit per row
  std::vector<u32> combos;        // m-bit combination of beta powers per row
};

SubfieldRep build_subfield_rep(const FieldCtx& ctx, unsigned m) {
  // The subfield is the kernel of x -> x^(2^m) + x, an F_2-linear map.
  std::vector<u32> kernel_images(ctx.n);
  for (unsigned j = 0; j < ctx.n; ++j) {
    u32 img = u32{1} << j;
    for (unsigned s = 0; s < m; ++s) img = mul(ctx, img, img);
    kernel_images[j] = img ^ (u32{1} << j);
  }
  std::vector<u32> kernel_basis;
  {
    // Nullspace of the map given by column images: track which input bits
    // combine to zero.
    std::vector<u32> cols;
    std::vector<u32> combos;
    std::vector<unsigned> pivots;
    for (unsigned j = 0; j < ctx.n; ++j) {
      u32 col = kernel_images[j];
      u32 combo = u32{1} << j;
      for (size_t k = 0; k < cols.size(); ++k) {
        if (col & (u32{1} << pivots[k])) {
          col ^= cols[k];
          combo ^= combos[k];
        }
      }
      if (col == 0) {
        kernel_basis.push_back(combo);
      } else {
        cols.push_back(col);
        combos.push_back(combo);
        pivots.push_back(31 - std::countl_zero(col));
      }
    }
  }
  if (kernel_basis.size() != m)
    throw error(errc::internal, "subfield kernel has unexpected dimension");

  std::vector<u32> subfield = f2_span_points(kernel_basis);
  std::sort(subfield.begin(), subfield.end());

  const u64 q = smallest_irreducible(m);
  u32 beta = 0;
  bool found = false;
  for (u32 cand : subfield) {
    u32 acc = 0;
    for (int j = 0; j <= poly_degree(q); ++j)
      if ((q >> j) & 1) acc ^= pow(ctx, cand, static_cast<u64>(j));
    if (acc == 0) {
      beta = cand;
      found = true;
      break;
    }
  }
  if (!found) throw error(errc::internal, "no root of the subfield modulus found");

  SubfieldRep rep;
  rep.beta_powers.resize(m);
  for (unsigned j = 0; j < m; ++j) rep.beta_powers[j] = pow(ctx, beta, j);
  for (unsigned j = 0; j < m; ++j) {
    u32 row = rep.beta_powers[j];
    u32 combo = u32{1} << j;
    for (size_t k = 0; k < rep.echelon.size(); ++k) {
      if (row & (u32{1} << rep.pivots[k])) {
        row ^= rep.echelon[k];
        combo ^= rep.combos[k];
      }
    }
    if (row == 0) throw error(errc::internal, "beta powers are linearly dependent");
    rep.echelon.push_back(row);
    rep.pivots.push_back(31 - std::countl_zero(row));
    rep.combos.push_back(combo);
  }
  return rep;
}

u32 subfield_decompose(const SubfieldRep& rep, u32 t) {
  u32 combo = 0;
  for (size_t k = 0; k < rep.echelon.size(); ++k) {
    if (t & (u32{1} << rep.pivots[k])) {
      t ^= rep.echelon[k];
      combo ^= rep.combos[k];
    }
  }
  if (t != 0) throw error(errc::internal, "trace value lies outside the subfield");
  return combo;
}

}  // namespace

u32 rel_trace(const FieldCtx& ctx, unsigned m, u32 a) {
  if (m == 0 || ctx.n % m != 0)
    throw error(errc::invalid_arguments,
                "relative trace requires m | n, got m=" + std::to_string(m) + ", n=" + std::to_string(ctx.n));
  if (m == ctx.n) return a;
  u32 t = a;
  u32 s = a;
  for (unsigned i = 1; i < ctx.n / m; ++i) {
    for (unsigned j = 0; j < m; ++j) s = mul(ctx, s, s);
    t ^= s;
  }
  const SubfieldRep rep = build_subfield_rep(ctx, m);
  return subfield_decompose(rep, t);
}

namespace {

SubspaceBasis form_kernel_basis(const FieldCtx& ctx, u32 form_mask) {
  if (form_mask == 0) throw error(errc::internal, "trace form is identically zero");
  const unsigned pivot = static_cast<unsigned>(std::countr_zero(form_mask));
  SubspaceBasis basis;
  basis.ambient_n = ctx.n;
  for (unsigned j = 0; j < ctx.n; ++j) {
    if (j == pivot) continue;
    u32 v = u32{1} << j;
    if ((form_mask >> j) & 1) v ^= u32{1} << pivot;
    basis.vectors.push_back(v);
  }
  return basis;
}

}  // namespace

SubspaceBasis trace_zero_basis(const FieldCtx& ctx) {
  if (ctx.n < 2)
    throw error(errc::invalid_arguments, "trace-zero subspace needs n >= 2");
  u32 mask = 0;
  for (unsigned j = 0; j < ctx.n; ++j) mask |= abs_trace(ctx, u32{1} << j) << j;
  return form_kernel_basis(ctx, mask);
}

SubspaceBasis hyperplane_basis(const FieldCtx& ctx, u32 alpha) {
  if (alpha == 0) throw error(errc::invalid_arguments, "hyperplane requires alpha != 0");
  u32 mask = 0;
  for (unsigned j = 0; j < ctx.n; ++j) mask |= abs_trace(ctx, mul(ctx, alpha, u32{1} << j)) << j;
  return form_kernel_basis(ctx, mask);
}

}  // namespace dillonlab
