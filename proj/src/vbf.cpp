#include "dillonlab/vbf.hpp"

#include <algorithm>

namespace dillonlab {

void QuadraticAnf::set_quad(unsigned i, unsigned j, u32 c) {
  if (i == j) throw error(errc::invalid_arguments, "quadratic coefficient needs i != j");
  if (i > j) std::swap(i, j);
  if (c == 0)
    a_quad.erase({i, j});
  else
    a_quad[{i, j}] = c;
}

AffineMap identity_affine(unsigned dim) {
  AffineMap a;
  a.dim_in = a.dim_out = dim;
  a.rows.resize(dim);
  for (unsigned i = 0; i < dim; ++i) a.rows[i] = u32{1} << i;
  return a;
}

bool affine_invertible(const AffineMap& a) {
  if (a.dim_in != a.dim_out) return false;
  return f2_rank(a.rows) == a.dim_in;
}

VBF from_truth_table(unsigned n, unsigned m, std::vector<u32> words) {
  if (n < 1 || n > 24 || m < 1 || m > 32)
    throw error(errc::invalid_table,
                "table dimensions out of range: n=" + std::to_string(n) + ", m=" + std::to_string(m));
  if (words.size() != (size_t{1} << n))
    throw error(errc::invalid_table, "table must have exactly 2^n entries, got " + std::to_string(words.size()));
  const u64 mask = (m == 32) ? ~u64{0} >> 32 : (u64{1} << m) - 1;
  for (u32 w : words)
    if (w > mask)
      throw error(errc::invalid_table, "table entry " + word_to_hex(w) + " exceeds " + std::to_string(m) + " bits");
  VBF f;
  f.n = n;
  f.m = m;
  f.table = std::move(words);
  return f;
}

VBF from_univariate(const FieldCtx& ctx, const std::map<u64, u32>& coeffs) {
  const u64 dom = u64{1} << ctx.n;
  for (const auto& [e, c] : coeffs) {
    if (e >= dom)
      throw error(errc::invalid_arguments, "univariate exponent " + std::to_string(e) + " out of range");
    if (c >= dom)
      throw error(errc::invalid_arguments, "univariate coefficient out of range");
  }
  std::vector<u32> table(dom, 0);
  for (u64 x = 0; x < dom; ++x) {
    u32 acc = 0;
    for (const auto& [e, c] : coeffs) acc ^= mul(ctx, c, pow(ctx, static_cast<u32>(x), e));
    table[x] = acc;
  }
  VBF f = from_truth_table(ctx.n, ctx.n, std::move(table));
  f.field_modulus = ctx.modulus;
  return f;
}

VBF from_anf(const QuadraticAnf& anf) {
  if (anf.a_lin.size() != anf.n)
    throw error(errc::invalid_arguments, "linear coefficient array must have n entries");
  const u64 dom = u64{1} << anf.n;
  std::vector<u32> table(dom, 0);
  for (u64 x = 0; x < dom; ++x) {
    u32 acc = anf.a_const;
    for (u32 t = static_cast<u32>(x); t; t &= t - 1) acc ^= anf.a_lin[std::countr_zero(t)];
    for (const auto& [ij, c] : anf.a_quad) {
      const auto [i, j] = ij;
      if (((x >> i) & 1) && ((x >> j) & 1)) acc ^= c;
    }
    table[x] = acc;
  }
  return from_truth_table(anf.n, anf.m, std::move(table));
}

std::vector<u32> to_anf(const VBF& f) {
  std::vector<u32> c = f.table;
  for (unsigned i = 0; i < f.n; ++i) {
    const u64 step = u64{1} << i;
    for (u64 j = 0; j < c.size(); ++j)
      if (j & step) c[j] ^= c[j ^ step];
  }
  return c;
}

QuadraticAnf to_quadratic_anf(const VBF& f) {
  const std::vector<u32> c = to_anf(f);
  QuadraticAnf anf;
  anf.n = f.n;
  anf.m = f.m;
  anf.a_lin.assign(f.n, 0);
  for (u64 mask = 0; mask < c.size(); ++mask) {
    if (c[mask] == 0) continue;
    const int w = std::popcount(mask);
    if (w > 2)
      throw error(errc::precondition, "function has degree " + std::to_string(degree(f)) + ", expected <= 2");
    if (w == 0) {
      anf.a_const = c[mask];
    } else if (w == 1) {
      anf.a_lin[std::countr_zero(mask)] = c[mask];
    } else {
      const unsigned i = static_cast<unsigned>(std::countr_zero(mask));
      const unsigned j = 31 - static_cast<unsigned>(std::countl_zero(static_cast<u32>(mask)));
      anf.set_quad(i, j, c[mask]);
    }
  }
  return anf;
}

unsigned degree(const VBF& f) {
  const std::vector<u32> c = to_anf(f);
  unsigned deg = 0;
  for (u64 mask = 0; mask < c.size(); ++mask)
    if (c[mask] != 0) deg = std::max(deg, static_cast<unsigned>(std::popcount(mask)));
  return deg;
}

bool is_quadratic(const VBF& f) { return degree(f) <= 2; }

VBF restrict_to(const VBF& f, const SubspaceBasis& basis) {
  if (basis.ambient_n != f.n)
    throw error(errc::invalid_arguments, "restriction basis lives in the wrong ambient space");
  if (f2_rank(basis.vectors) != basis.dim())
    throw error(errc::invalid_basis, "restriction basis is rank deficient");
  const std::vector<u32> pts = f2_span_points(basis.vectors);
  std::vector<u32> table(pts.size());
  for (size_t y = 0; y < pts.size(); ++y) table[y] = f.table[pts[y]];
  VBF g = from_truth_table(basis.dim(), f.m, std::move(table));
  g.field_modulus = f.field_modulus;
  g.provenance = f.provenance.empty() ? "restricted" : f.provenance + "|restricted";
  return g;
}

VBF normalize(const VBF& f) {
  VBF g = f;
  const u32 c = f.table[0];
  if (c != 0)
    for (u32& w : g.table) w ^= c;
  if (g.provenance.find("normalized") == std::string::npos)
    g.provenance = g.provenance.empty() ? "normalized" : g.provenance + "|normalized";
  return g;
}

VBF ea_transform(const VBF& f, const AffineMap& a1, const AffineMap& a2, const AffineMap& add) {
  if (a1.dim_in != f.m || a1.dim_out != f.m || a2.dim_in != f.n || a2.dim_out != f.n)
    throw error(errc::invalid_affine, "EA transform maps have wrong dimensions");
  if (add.dim_in != f.n || add.dim_out != f.m)
    throw error(errc::invalid_affine, "EA additive part must map n bits to m bits");
  if (!affine_invertible(a1) || !affine_invertible(a2))
    throw error(errc::invalid_affine, "EA transform requires invertible affine permutations");
  std::vector<u32> table(f.domain());
  for (u64 x = 0; x < f.domain(); ++x)
    table[x] = a1(f.table[a2(static_cast<u32>(x))]) ^ add(static_cast<u32>(x));
  VBF g = from_truth_table(f.n, f.m, std::move(table));
  g.field_modulus = f.field_modulus;
  g.provenance = f.provenance.empty() ? "ea-transformed" : f.provenance + "|ea-transformed";
  return g;
}

}  // namespace dillonlab
