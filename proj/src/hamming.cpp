#include "slicerank/hamming.hpp"

#include <algorithm>

namespace slicerank {

namespace {

// Largest slice enumerate_slice will materialize.
constexpr std::uint64_t kMaxSlicePoints = std::uint64_t{1} << 26;

void require_same_dim(const SlicePoint& x, const SlicePoint& y) {
  if (x.dim() != y.dim())
    throw DomainError("dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                      std::to_string(y.dim()));
}

// C(n,k) saturating at kMaxSlicePoints + 1.
std::uint64_t capped_binomial(int n, int k) {
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > kMaxSlicePoints) return kMaxSlicePoints + 1;
  }
  return static_cast<std::uint64_t>(c);
}

} // namespace

SlicePoint::SlicePoint(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (n > kMaxDimension)
    throw ResourceError("dimension " + std::to_string(n) + " exceeds bit-width limit " +
                            std::to_string(kMaxDimension),
                        n, kMaxDimension);
  if (bits & ~low_mask(n)) throw DomainError("bits set beyond dimension");
}

SlicePoint SlicePoint::from_string(const std::string& s) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      bits |= std::uint64_t{1} << i;
    else if (s[i] != '0')
      throw DomainError("point string must be 0/1: " + s);
  }
  return SlicePoint(static_cast<int>(s.size()), bits);
}

SlicePoint SlicePoint::from_support(int n, const std::vector<int>& ones) {
  std::uint64_t bits = 0;
  for (int i : ones) {
    if (i < 1 || i > n) throw DomainError("coordinate out of range");
    bits |= std::uint64_t{1} << (i - 1);
  }
  return SlicePoint(n, bits);
}

std::string SlicePoint::to_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if ((bits_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::string SlicePoint::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const int width = (n_ + 3) / 4;
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i)
    s[static_cast<std::size_t>(width - 1 - i)] = digits[(bits_ >> (4 * i)) & 0xF];
  return s;
}

std::vector<SlicePoint> enumerate_slice(int n, int k) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (n > kMaxDimension)
    throw ResourceError("dimension " + std::to_string(n) + " exceeds bit-width limit", n,
                        kMaxDimension);
  if (k < 0 || k > n) throw DomainError("slice weight must satisfy 0 <= k <= n");
  const std::uint64_t count = capped_binomial(n, k);
  if (count > kMaxSlicePoints)
    throw ResourceError("slice too large to enumerate", static_cast<double>(count),
                        static_cast<double>(kMaxSlicePoints));

  std::vector<SlicePoint> out;
  out.reserve(count);
  std::uint64_t v = low_mask(k);
  if (k == 0) v = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(n, v);
    if (i + 1 < count) v = next_same_weight(v);
  }
  return out;
}

int squared_distance(const SlicePoint& x, const SlicePoint& y) {
  require_same_dim(x, y);
  return std::popcount(x.bits() ^ y.bits());
}

int half_squared_distance(const SlicePoint& x, const SlicePoint& y) {
  const int d = squared_distance(x, y);
  if (d % 2 != 0)
    throw DomainError("odd squared distance " + std::to_string(d) +
                      " (points of different weight)");
  return d / 2;
}

CoordinateProfile coordinate_profile(const SlicePoint& x, const SlicePoint& y,
                                     const SlicePoint& z) {
  require_same_dim(x, y);
  require_same_dim(x, z);
  const std::uint64_t a = x.bits(), b = y.bits(), c = z.bits();
  // Bit-sliced full adder: ones = sum bit 0, carry = sum bit 1.
  const std::uint64_t ones = a ^ b ^ c;
  const std::uint64_t carry = (a & b) | (a & c) | (b & c);
  const std::uint64_t live = low_mask(x.dim());
  CoordinateProfile p;
  p.a3 = std::popcount(ones & carry);
  p.a2 = std::popcount(~ones & carry & live);
  p.a1 = std::popcount(ones & ~carry);
  p.a0 = x.dim() - p.a1 - p.a2 - p.a3;
  return p;
}

bool is_equilateral(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
                    int side_squared) {
  require_same_dim(x, y);
  require_same_dim(x, z);
  if (x == y || y == z || x == z)
    throw DomainError("degenerate triangle: repeated point");
  return squared_distance(x, y) == side_squared && squared_distance(y, z) == side_squared &&
         squared_distance(z, x) == side_squared;
}

} // namespace slicerank
