#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "slicerank/errors.hpp"

namespace slicerank {

// Largest dimension supported by the packed representation.
inline constexpr int kMaxDimension = 64;

// A 0/1 vector of length n packed into a 64-bit mask. Coordinate i (1-based)
// lives in bit i-1.
class SlicePoint {
public:
  SlicePoint() = default;
  SlicePoint(int n, std::uint64_t bits);

  // From a 0/1 string, coordinate 1 first ("111100000").
  static SlicePoint from_string(const std::string& s);
  // From a list of 1-based coordinates that are set.
  static SlicePoint from_support(int n, const std::vector<int>& ones);

  int dim() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  int weight() const noexcept { return std::popcount(bits_); }
  bool coordinate(int i) const noexcept { return (bits_ >> (i - 1)) & 1u; }

  // Coordinate 1 first.
  std::string to_string() const;
  // Fixed-width hex of the packed mask, ceil(n/4) digits, most significant first.
  std::string to_hex() const;

  friend bool operator==(const SlicePoint&, const SlicePoint&) = default;
  friend auto operator<=>(const SlicePoint&, const SlicePoint&) = default;

private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

struct CoordinateProfile {
  int a0 = 0;
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;

  friend bool operator==(const CoordinateProfile&, const CoordinateProfile&) = default;
};

// All weight-k points of {0,1}^n in colexicographic order (increasing mask).
std::vector<SlicePoint> enumerate_slice(int n, int k);

int squared_distance(const SlicePoint& x, const SlicePoint& y);
// Exact half of the squared distance; requires equal weights.
int half_squared_distance(const SlicePoint& x, const SlicePoint& y);

CoordinateProfile coordinate_profile(const SlicePoint& x, const SlicePoint& y,
                                     const SlicePoint& z);

// Throws DomainError if any two of x, y, z coincide.
bool is_equilateral(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
                    int side_squared);

// Mask with the low n bits set.
constexpr std::uint64_t low_mask(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Next mask with the same popcount (Gosper). Caller guards against overflow.
constexpr std::uint64_t next_same_weight(std::uint64_t v) noexcept {
  const std::uint64_t c = v & (~v + 1);
  const std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

} // namespace slicerank
