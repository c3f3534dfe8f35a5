#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace dillonlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

enum class errc {
  invalid_modulus,
  invalid_arguments,
  invalid_table,
  invalid_basis,
  invalid_affine,
  precondition,
  size_limit,
  structural_mismatch,
  parse_error,
  internal,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

inline u32 parity(u64 w) { return static_cast<u32>(std::popcount(w) & 1); }

/// Standard dot product on F_2^k: parity of the bitwise AND.
inline u32 dot(u32 a, u32 b) { return parity(static_cast<u64>(a) & b); }

/// log2-of-work budget for guarded scans. DILLONLAB_MAX_BITS replaces the
/// per-check default when set (expert mode; can raise or lower).
inline unsigned guard_bits(unsigned default_bits) {
  if (const char* s = std::getenv("DILLONLAB_MAX_BITS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0 && v < 128) return static_cast<unsigned>(v);
  }
  return default_bits;
}

std::string i128_to_string(i128 v);

/// Coverage accumulator over F_2^m: one bit per element, popcount tracked so
/// scans can early-exit the moment every value has been hit.
class Coverage {
 public:
  explicit Coverage(unsigned m)
      : m_(m), domain_(u64{1} << m), bits_((domain_ + 63) / 64, 0), count_(0) {}

  bool add(u32 v) {
    u64& w = bits_[v >> 6];
    const u64 bit = u64{1} << (v & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }
  bool test(u32 v) const { return (bits_[v >> 6] >> (v & 63)) & 1; }
  bool full() const { return count_ == domain_; }
  u64 count() const { return count_; }
  u64 domain() const { return domain_; }
  unsigned m() const { return m_; }

  void merge(const Coverage& other);
  /// Unattained values in ascending order; at most `cap` entries (0 = all).
  std::vector<u32> missing(size_t cap = 0) const;
  u64 missing_count() const { return domain_ - count_; }

 private:
  unsigned m_;
  u64 domain_;
  std::vector<u64> bits_;
  u64 count_;
};

/// In-place unnormalized Walsh-Hadamard butterfly:
/// out[w] = sum_x in[x] * (-1)^(w.x). Doubles as the Fourier-Hadamard
/// transform of pseudo-Boolean functions. Size must be a power of two.
template <class T>
void hadamard_inplace(std::vector<T>& a) {
  const size_t sz = a.size();
  for (size_t step = 1; step < sz; step <<= 1) {
    for (size_t i = 0; i < sz; i += step << 1) {
      for (size_t j = i; j < i + step; ++j) {
        const T u = a[j];
        const T v = a[j + step];
        a[j] = u + v;
        a[j + step] = u - v;
      }
    }
  }
}

// --- small F2 linear algebra on bit-packed vectors -------------------------

/// Rank of a list of w-bit vectors over F_2.
unsigned f2_rank(std::vector<u32> vecs);

/// Incremental row-echelon span with lowest-set-bit pivots.
class F2Span {
 public:
  /// Returns true if v was linearly independent of the current span.
  bool insert(u32 v);
  bool contains(u32 v) const { return reduce(v) == 0; }
  unsigned rank() const { return static_cast<unsigned>(rows_.size()); }
  const std::vector<u32>& rows() const { return rows_; }

 private:
  u32 reduce(u32 v) const;
  std::vector<u32> rows_;  // kept sorted by pivot (descending bit)
};

/// Basis of { x in F_2^width : dot(row, x) = 0 for every row }.
std::vector<u32> f2_nullspace(std::vector<u32> rows, unsigned width);

/// All 2^k span elements of the given basis, index order:
/// element[y] = XOR of basis[i] over set bits i of y.
std::vector<u32> f2_span_points(const std::vector<u32>& basis);

/// Same span in Gray-code visit order (one basis-vector XOR per step).
std::vector<u32> f2_span_points_gray(const std::vector<u32>& basis);

}  // namespace dillonlab
