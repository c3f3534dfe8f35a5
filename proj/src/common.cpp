#include "dillonlab/common.hpp"

#include <algorithm>

namespace dillonlab {

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

void Coverage::merge(const Coverage& other) {
  if (other.m_ != m_) throw error(errc::internal, "coverage width mismatch in merge");
  count_ = 0;
  for (size_t i = 0; i < bits_.size(); ++i) {
    bits_[i] |= other.bits_[i];
    count_ += std::popcount(bits_[i]);
  }
}

std::vector<u32> Coverage::missing(size_t cap) const {
  std::vector<u32> out;
  for (u64 v = 0; v < domain_; ++v) {
    if (!test(static_cast<u32>(v))) {
      out.push_back(static_cast<u32>(v));
      if (cap != 0 && out.size() == cap) break;
    }
  }
  return out;
}

u32 F2Span::reduce(u32 v) const {
  for (u32 row : rows_) {
    const u32 pivot = u32{1} << (31 - std::countl_zero(row));
    if (v & pivot) v ^= row;
  }
  return v;
}

bool F2Span::insert(u32 v) {
  v = reduce(v);
  if (v == 0) return false;
  rows_.push_back(v);
  std::sort(rows_.begin(), rows_.end(), std::greater<u32>());
  return true;
}

unsigned f2_rank(std::vector<u32> vecs) {
  F2Span sp;
  for (u32 v : vecs) sp.insert(v);
  return sp.rank();
}

std::vector<u32> f2_nullspace(std::vector<u32> rows, unsigned width) {
  // Row-reduce, remember pivot columns, then read one basis vector per free
  // column the usual way.
  std::vector<u32> reduced;
  std::vector<unsigned> pivots;
  for (u32 r : rows) {
    for (size_t k = 0; k < reduced.size(); ++k)
      if (r & (u32{1} << pivots[k])) r ^= reduced[k];
    if (r == 0) continue;
    const unsigned p = 31 - std::countl_zero(r);
    for (size_t k = 0; k < reduced.size(); ++k)
      if (reduced[k] & (u32{1} << p)) reduced[k] ^= r;
    reduced.push_back(r);
    pivots.push_back(p);
  }
  std::vector<u32> basis;
  for (unsigned c = 0; c < width; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    u32 v = u32{1} << c;
    for (size_t k = 0; k < reduced.size(); ++k)
      if (reduced[k] & (u32{1} << c)) v |= u32{1} << pivots[k];
    basis.push_back(v);
  }
  return basis;
}

std::vector<u32> f2_span_points(const std::vector<u32>& basis) {
  const size_t k = basis.size();
  std::vector<u32> pts(size_t{1} << k, 0);
  for (size_t y = 1; y < pts.size(); ++y)
    pts[y] = pts[y & (y - 1)] ^ basis[std::countr_zero(y)];
  return pts;
}

std::vector<u32> f2_span_points_gray(const std::vector<u32>& basis) {
  const size_t k = basis.size();
  std::vector<u32> pts(size_t{1} << k, 0);
  u32 cur = 0;
  for (size_t t = 1; t < pts.size(); ++t) {
    cur ^= basis[std::countr_zero(t)];
    pts[t] = cur;
  }
  return pts;
}

}  // namespace dillonlab
