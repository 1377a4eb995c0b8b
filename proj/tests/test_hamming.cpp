#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "slicerank/hamming.hpp"
#include "slicerank/rng.hpp"

using namespace slicerank;

namespace {

SlicePoint pt(const char* s) { return SlicePoint::from_string(s); }

SlicePoint permute(const SlicePoint& x, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int i = 0; i < x.dim(); ++i)
    if (x.coordinate(i + 1)) out |= std::uint64_t{1} << perm[static_cast<std::size_t>(i)];
  return SlicePoint(x.dim(), out);
}

} // namespace

TEST_CASE("SlicePoint construction and formatting") {
  const auto x = pt("111100000");
  CHECK(x.dim() == 9);
  CHECK(x.weight() == 4);
  CHECK(x.bits() == 0xF);
  CHECK(x.coordinate(1));
  CHECK_FALSE(x.coordinate(5));
  CHECK(x.to_string() == "111100000");
  CHECK(x.to_hex() == "00f");
  CHECK(SlicePoint::from_support(9, {1, 5, 8, 9}).to_string() == "100010011");
  CHECK(SlicePoint(64, ~std::uint64_t{0}).weight() == 64);
  CHECK(SlicePoint(64, ~std::uint64_t{0}).to_hex() == "ffffffffffffffff");
  CHECK(SlicePoint(1, 1).to_hex() == "1");
}

TEST_CASE("SlicePoint rejects bad input") {
  CHECK_THROWS_AS(SlicePoint(0, 0), DomainError);
  CHECK_THROWS_AS(SlicePoint(65, 0), ResourceError);
  CHECK_THROWS_AS(SlicePoint(3, 0b1000), DomainError);
  CHECK_THROWS_AS(SlicePoint::from_string("10a"), DomainError);
  CHECK_THROWS_AS(SlicePoint::from_support(4, {5}), DomainError);
  CHECK_THROWS_AS(SlicePoint::from_support(4, {0}), DomainError);
}

TEST_CASE("enumerate_slice examples") {
  const auto z = enumerate_slice(3, 0);
  REQUIRE(z.size() == 1);
  CHECK(z[0].to_string() == "000");
  CHECK(enumerate_slice(7, 4).size() == 35);
  const auto s = enumerate_slice(9, 4);
  REQUIRE(s.size() == 126);
  CHECK(s.front().to_string() == "111100000");
  CHECK(s.back().to_string() == "000001111");
  CHECK(std::is_sorted(s.begin(), s.end(),
                       [](const SlicePoint& a, const SlicePoint& b) { return a.bits() < b.bits(); }));
  std::set<std::uint64_t> distinct;
  for (const auto& p : s) {
    CHECK(p.weight() == 4);
    distinct.insert(p.bits());
  }
  CHECK(distinct.size() == 126);
  CHECK(enumerate_slice(64, 1).size() == 64);
  CHECK(enumerate_slice(64, 64).size() == 1);
}

TEST_CASE("enumerate_slice errors") {
  CHECK_THROWS_AS(enumerate_slice(3, 4), DomainError);
  CHECK_THROWS_AS(enumerate_slice(3, -1), DomainError);
  CHECK_THROWS_AS(enumerate_slice(65, 1), ResourceError);
  CHECK_THROWS_AS(enumerate_slice(64, 32), ResourceError);
}

TEST_CASE("squared and half squared distance") {
  CHECK(squared_distance(pt("1100"), pt("0011")) == 4);
  CHECK(squared_distance(pt("1100"), pt("1100")) == 0);
  CHECK(squared_distance(pt("111100000"), pt("000111100")) == 6);
  CHECK(half_squared_distance(pt("1100"), pt("0011")) == 2);
  CHECK(half_squared_distance(pt("1100"), pt("1100")) == 0);
  CHECK(half_squared_distance(pt("111100000"), pt("000111100")) == 3);
  CHECK_THROWS_AS(squared_distance(pt("1100"), pt("110")), DomainError);
  CHECK_THROWS_AS(half_squared_distance(pt("1100"), pt("1000")), DomainError);
}

TEST_CASE("coordinate_profile examples") {
  CHECK(coordinate_profile(pt("1100"), pt("1100"), pt("1100")) == CoordinateProfile{2, 0, 0, 2});
  const auto x = SlicePoint::from_support(9, {1, 2, 3, 4});
  const auto y = SlicePoint::from_support(9, {4, 5, 6, 7});
  const auto z = SlicePoint::from_support(9, {1, 5, 8, 9});
  CHECK(coordinate_profile(x, y, z) == CoordinateProfile{0, 6, 3, 0});
  const auto u = SlicePoint::from_support(12, {1, 2, 3, 4, 5, 6});
  const auto v = SlicePoint::from_support(12, {1, 2, 3, 7, 8, 9});
  const auto w = SlicePoint::from_support(12, {4, 5, 6, 7, 8, 9});
  CHECK(coordinate_profile(u, v, w) == CoordinateProfile{3, 0, 9, 0});
  CHECK_THROWS_AS(coordinate_profile(x, y, u), DomainError);
}

TEST_CASE("is_equilateral examples") {
  const auto x = SlicePoint::from_support(9, {1, 2, 3, 4});
  const auto y = SlicePoint::from_support(9, {4, 5, 6, 7});
  const auto z = SlicePoint::from_support(9, {1, 5, 8, 9});
  CHECK(is_equilateral(x, y, z, 6));
  CHECK_FALSE(is_equilateral(x, y, z, 4));
  CHECK_FALSE(is_equilateral(x, y, z, 0));
  const auto u = SlicePoint::from_support(12, {1, 2, 3, 4, 5, 6});
  const auto v = SlicePoint::from_support(12, {1, 2, 3, 7, 8, 9});
  const auto w = SlicePoint::from_support(12, {4, 5, 6, 7, 8, 9});
  CHECK(is_equilateral(u, v, w, 6));
  CHECK_THROWS_AS(is_equilateral(x, x, y, 6), DomainError);
  CHECK_THROWS_AS(is_equilateral(x, y, y, 0), DomainError);
}

TEST_CASE("profile and distance identities, exhaustive for small slices") {
  for (int n = 1; n <= 7; ++n)
    for (int k = 0; 2 * k <= n; ++k) {
      const auto s = enumerate_slice(n, k);
      for (const auto& x : s)
        for (const auto& y : s)
          for (const auto& z : s) {
            const auto a = coordinate_profile(x, y, z);
            REQUIRE(a.a0 + a.a1 + a.a2 + a.a3 == n);
            REQUIRE(a.a1 + 2 * a.a2 + 3 * a.a3 == 3 * k);
            const int d = squared_distance(x, y) + squared_distance(y, z) + squared_distance(z, x);
            REQUIRE(d == 2 * (a.a1 + a.a2));
            if (a.a1 == 0) {
              const int e = 2 * n - 2 * k - 2 * a.a0;
              REQUIRE(squared_distance(x, y) == e);
              REQUIRE(squared_distance(y, z) == e);
              REQUIRE(squared_distance(z, x) == e);
              REQUIRE(2 * half_squared_distance(x, y) <= k);
            }
          }
    }
}

TEST_CASE("coordinate_profile symmetry under argument and coordinate permutations") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(64));
    auto draw = [&] {
      const std::uint64_t bits = rng.next() & low_mask(n);
      return SlicePoint(n, bits);
    };
    const auto x = draw(), y = draw(), z = draw();
    const auto a = coordinate_profile(x, y, z);
    CHECK(coordinate_profile(y, x, z) == a);
    CHECK(coordinate_profile(z, y, x) == a);
    CHECK(coordinate_profile(y, z, x) == a);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.uniform_below(i)]);
    CHECK(coordinate_profile(permute(x, perm), permute(y, perm), permute(z, perm)) == a);
  }
}

TEST_CASE("triangle inequality after square roots, random spot check") {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(64));
    const SlicePoint x(n, rng.next() & low_mask(n)), y(n, rng.next() & low_mask(n)),
        z(n, rng.next() & low_mask(n));
    const double a = std::sqrt(squared_distance(x, y)), b = std::sqrt(squared_distance(y, z)),
                 c = std::sqrt(squared_distance(z, x));
    CHECK(a <= b + c + 1e-12);
    CHECK(b <= a + c + 1e-12);
    CHECK(c <= a + b + 1e-12);
  }
}

TEST_CASE("Rng is deterministic and bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(c.uniform_below(7) < 7);
    const double u = c.uniform_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
