#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "slicerank/modular_tensor.hpp"

namespace slicerank {

// Side-sqrt(2p) equilateral triangles of one Hamming slice, as a 3-uniform
// hypergraph on the canonically ordered slice.
struct TriangleHypergraph {
  TriangleParams params;
  std::vector<SlicePoint> vertices;
  std::vector<std::array<std::uint32_t, 3>> edges; // i < j < l, sorted
};

struct EnumerationBudget {
  std::uint64_t max_vertices = 1u << 14;
};

TriangleHypergraph enumerate_triangles(const TriangleParams& params,
                                       const EnumerationBudget& budget = {});

// Maximal triangle-free vertex subset from a seeded random insertion order.
// Returned indices are sorted.
std::vector<std::uint32_t> greedy_triangle_free(const TriangleHypergraph& h, std::uint64_t seed);

enum class OracleStatus { exact, lower_bound_only };

std::string to_string(OracleStatus s);

struct OracleResult {
  std::uint64_t size = 0;
  std::vector<std::uint32_t> witness; // sorted vertex indices
  OracleStatus status = OracleStatus::exact;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t budget_spent = 0; // nodes charged against the budget
  std::uint64_t greedy_size = 0;  // incumbent the search started from
};

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  // Branch and bound keeps per-level conflict bitsets; larger slices are refused.
  std::uint64_t max_vertices = 1024;
  // Greedy incumbents are drawn with seeds seed .. seed + 7.
  std::uint64_t seed = 0;
};

// Maximum triangle-free subset by branch and bound. Exhausting the node
// budget is reported through `status`, not thrown.
OracleResult max_triangle_free(const TriangleHypergraph& h, const SearchBudget& budget = {});

// Brute-force check over all triples of `set`, independent of any edge list.
bool is_triangle_free(const std::vector<SlicePoint>& set, int side_squared);

} // namespace slicerank
