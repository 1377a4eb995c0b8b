#include "doctest.h"

#include <algorithm>
#include <bit>
#include <set>
#include <tuple>

#include "slicerank/bounds.hpp"
#include "slicerank/poly_expand.hpp"

using namespace slicerank;

namespace {

void check_map_shape(const MonomialMap& m) {
  const auto& params = m.params();
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> keys;
  for (const auto& t : m.terms()) {
    REQUIRE(t.coeff >= 1);
    REQUIRE(t.coeff < params.p);
    REQUIRE(t.degree() <= params.degree_bound);
    REQUIRE(keys.insert({t.ez, t.ey, t.ex}).second);
  }
  REQUIRE(std::is_sorted(m.terms().begin(), m.terms().end(),
                         [](const MultilinearMonomial& a, const MultilinearMonomial& b) {
                           return std::tie(a.ez, a.ey, a.ex) < std::tie(b.ez, b.ey, b.ex);
                         }));
}

} // namespace

TEST_CASE("expand_F term counts") {
  ExpansionStats stats;
  const auto f2 = expand_F(TriangleParams::with_prime(2, 1, 3), &stats);
  CHECK(stats.f_raw_terms == 16);
  CHECK(stats.f_terms == 16);
  CHECK(f2.size() == 16);
  const auto f1 = expand_F(TriangleParams::with_prime(1, 1, 3));
  REQUIRE(f1.size() == 4);
  // x + y + z - 1
  CHECK(f1.terms()[0] == MultilinearMonomial{2, 0, 0, 0});
  CHECK(f1.max_degree() == 1);
}

TEST_CASE("expand_H agrees with eval_H on the n=1 cube") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto m = expand_H(TriangleParams::with_prime(1, 1, p));
    check_map_shape(m);
    const auto r = verify_expansion(m, CheckPlan::cube());
    CHECK(r.passed);
    CHECK(r.checked == 8);
  }
}

TEST_CASE("expand_H agrees with eval_H exhaustively for n <= 5") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= n; ++k)
      for (std::uint32_t p : {3u, 5u}) {
        const auto m = expand_H(TriangleParams::with_prime(n, k, p));
        check_map_shape(m);
        const auto cube = verify_expansion(m, CheckPlan::cube());
        REQUIRE(cube.passed);
        CHECK(cube.checked == (std::uint64_t{1} << (3 * n)));
        REQUIRE(verify_expansion(m, CheckPlan::slice()).passed);
      }
}

TEST_CASE("expand_H degree bound and size at n=9, k=4, p=3") {
  ExpansionStats stats;
  const auto m = expand_H(TriangleParams::for_slice(9, 4), {}, &stats);
  CHECK(m.max_degree() <= 13);
  CHECK(m.params().degree_bound == 13);
  CHECK(m.size() == 7340032);
  for (const auto& t : m.terms()) REQUIRE(t.degree() <= 13);
  CHECK(verify_expansion(m, CheckPlan::sampled(10000, 3)).passed);
}

TEST_CASE("expansion is deterministic") {
  const auto params = TriangleParams::for_slice(6, 3);
  CHECK(expand_H(params).terms() == expand_H(params).terms());
}

TEST_CASE("expansion budget") {
  CHECK(expansion_work_estimate(9, 3) == doctest::Approx(262144.0 * 352.0));
  CHECK_THROWS_AS(expand_H(TriangleParams::for_slice(11, 4)), ResourceError);
  CHECK_THROWS_AS(expand_H(TriangleParams::with_prime(6, 3, 7)), ResourceError);
  ExpansionBudget tight;
  tight.max_product_terms = 10;
  CHECK_THROWS_AS(expand_H(TriangleParams::for_slice(4, 2), tight), ResourceError);
  CHECK_THROWS_AS(expand_F(TriangleParams::for_slice(21, 2)), ResourceError);
  CHECK_THROWS_AS(verify_expansion(expand_H(TriangleParams::for_slice(7, 3)), CheckPlan::cube()),
                  ResourceError);
  try {
    expand_H(TriangleParams::for_slice(10, 5));
    FAIL("expected refusal");
  } catch (const ResourceError& e) {
    CHECK(e.required() > e.limit());
  }
}

TEST_CASE("slice decomposition for n=1") {
  const auto m = expand_H(TriangleParams::with_prime(1, 1, 3));
  const auto d = build_slice_decomposition(m);
  const auto c = slice_count(d);
  CHECK(c.ceiling == 6);
  CHECK(c.entries <= 6);
  CHECK(c.within_ceiling);
  CHECK(verify_decomposition(d, CheckPlan::cube()).passed);
  // The constant term has three empty blocks and goes to X.
  bool found = false;
  for (const auto& e : d.entries)
    if (e.key == 0 && e.block == Block::X)
      for (const auto& t : e.cofactor)
        if (t.first == 0 && t.second == 0) found = true;
  CHECK(found);
}

TEST_CASE("slice decomposition invariants") {
  for (int n = 1; n <= 7; ++n)
    for (int k = 0; 2 * k <= n; ++k) {
      const auto params = TriangleParams::with_prime(n, k, 3);
      const auto m = expand_H(params);
      const auto d = build_slice_decomposition(m);
      std::size_t cofactor_terms = 0;
      for (std::size_t i = 0; i < d.entries.size(); ++i) {
        const auto& e = d.entries[i];
        REQUIRE(std::popcount(e.key) <= params.r_count);
        if (i > 0)
          REQUIRE(std::tie(d.entries[i - 1].block, d.entries[i - 1].key) <
                  std::tie(e.block, e.key));
        for (const auto& t : e.cofactor) {
          // The entry's block is a lightest block of the monomial.
          const int w = std::popcount(e.key);
          REQUIRE(std::popcount(t.first) >= w);
          REQUIRE(std::popcount(t.second) >= w);
        }
        cofactor_terms += e.cofactor.size();
      }
      REQUIRE(cofactor_terms == m.size());
      const auto c = slice_count(d);
      REQUIRE(c.within_ceiling);
      REQUIRE(BigInt(c.ceiling) == rank_ceiling_exact(params));
      REQUIRE(verify_decomposition(d, CheckPlan::slice()).passed);
      if (n <= 5) REQUIRE(verify_decomposition(d, CheckPlan::cube()).passed);
    }
}

TEST_CASE("decomposition of n=7, k=4 and n=9, k=4") {
  const auto d7 = build_slice_decomposition(expand_H(TriangleParams::for_slice(7, 4)));
  const auto r7 = verify_decomposition(d7, CheckPlan::sampled(10000, 1));
  CHECK(r7.passed);
  CHECK(r7.checked == 10000);
  CHECK(r7.max_key_weight <= 3);
  CHECK(slice_count(d7).ceiling == 192);
  CHECK(slice_count(d7).entries <= 192);

  const auto d9 = build_slice_decomposition(expand_H(TriangleParams::for_slice(9, 4)));
  CHECK(slice_count(d9).ceiling == 768);
  CHECK(slice_count(d9).entries <= 768);
  CHECK(verify_decomposition(d9, CheckPlan::sampled(10000, 1)).passed);
}

TEST_CASE("a damaged decomposition is caught") {
  auto d = build_slice_decomposition(expand_H(TriangleParams::with_prime(3, 1, 3)));
  d.entries.erase(d.entries.begin());
  const auto r = verify_decomposition(d, CheckPlan::cube());
  CHECK_FALSE(r.passed);
  REQUIRE(r.mismatch.has_value());
  CHECK(r.mismatch->expected != r.mismatch->actual);
}

TEST_CASE("a damaged expansion is caught") {
  const auto m = expand_H(TriangleParams::with_prime(3, 1, 3));
  auto terms = m.terms();
  terms.back().coeff = terms.back().coeff % 2 + 1;
  const MonomialMap bad(m.params(), terms);
  const auto r = verify_expansion(bad, CheckPlan::cube());
  CHECK_FALSE(r.passed);
  CHECK(r.mismatch.has_value());
}

TEST_CASE("slice_count of an empty decomposition") {
  SliceDecomposition d;
  d.params = TriangleParams::for_slice(9, 4);
  const auto c = slice_count(d);
  CHECK(c.entries == 0);
  CHECK(c.ceiling == 768);
  CHECK(c.within_ceiling);
}

TEST_CASE("evaluators match eval_H") {
  const auto params = TriangleParams::for_slice(6, 3);
  const auto m = expand_H(params);
  const MonomialEvaluator em(m);
  const DecompositionEvaluator ed(build_slice_decomposition(m));
  const auto s = enumerate_slice(6, 3);
  for (std::size_t i = 0; i < s.size(); i += 3)
    for (std::size_t j = 0; j < s.size(); j += 2)
      for (std::size_t l = 0; l < s.size(); ++l) {
        const auto h = eval_H(s[i], s[j], s[l], params.p);
        REQUIRE(em(s[i], s[j], s[l]) == h);
        REQUIRE(ed(s[i], s[j], s[l]) == h);
      }
  CHECK(to_char(Block::X) == 'X');
  CHECK(to_char(Block::Z) == 'Z');
}
