#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "dillonlab/scan.hpp"
#include "dillonlab/vbf.hpp"

namespace dillonlab {

/// One Walsh transform row: values[u] = W_F(u, v) = sum_x (-1)^(v.F(x)+u.x).
struct WalshRow {
  u32 v = 0;
  std::vector<i64> values;
};

/// One DDT row: counts[b] = |{ x : F(x) + F(x+a) = b }|, a != 0.
struct DdtRow {
  u32 a = 0;
  std::vector<u32> counts;
};

WalshRow walsh_row(const VBF& f, u32 v);
DdtRow ddt_row(const VBF& f, u32 a);

/// nl(F) = 2^(n-1) - max |W_F(u, v)| / 2 over all u and nonzero v.
i64 nonlinearity(const VBF& f, int threads = 1);

/// Per-component plateaued/partially-bent/bent classification. Components are
/// indexed by nonzero v in F_2^m; amplitude[v] is the single |W| value lambda_v
/// when the component is plateaued, nullopt otherwise. Structure data (linear
/// structure dimensions ell_v, partially-bent flags, the bent/non-bent split)
/// costs an extra 2^(2n) scan per component and can be skipped.
struct PlateauedProfile {
  unsigned n = 0;
  unsigned m = 0;
  bool is_plateaued = false;
  std::vector<std::optional<i64>> amplitude;  // size 2^m, entry 0 unused
  size_t bent_set_size = 0;                   // components with lambda^2 = 2^n

  bool has_structure = false;
  std::vector<unsigned> structure_dim;  // ell_v = dim V(v); valid with structure
  std::vector<bool> partially_bent;     // every derivative balanced or constant
  std::vector<u32> nonbent_set;         // nonzero v with some non-balanced derivative

  bool strongly_plateaued() const;
};

PlateauedProfile plateaued_profile(const VBF& f, bool with_structure = true, int threads = 1);

/// Components v for which a is a linear structure (D_a F_v constant); always a
/// subspace of F_2^m containing 0. Returned sorted ascending.
std::vector<u32> delta_set(const VBF& f, u32 a);

enum class PlaneKind { affine, vector };

/// Image of Phi_F(A) = sum_{x in A} F(x) over all 2-dimensional affine planes
/// (or vector subspaces). Each plane is visited exactly once through its
/// canonical representative (three smallest points / two smallest nonzero
/// basis elements).
struct PhiImage {
  std::vector<u32> values;  // sorted distinct
  std::map<u32, std::array<u32, 4>> witnesses;
  u64 plane_count = 0;
};

PhiImage phi_image(const VBF& f, PlaneKind kind);

u64 affine_plane_count(unsigned n);  // 2^n (2^n - 1)(2^(n-1) - 1) / 12
u64 vector_plane_count(unsigned n);  // (2^n - 1)(2^(n-1) - 1) / 3

}  // namespace dillonlab
