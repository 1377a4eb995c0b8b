#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "slicerank/flat_map.hpp"
#include "slicerank/modular_tensor.hpp"

namespace slicerank {

// Largest n whose three exponent masks pack into one 63-bit key.
inline constexpr int kMaxPackedDimension = 20;

// coeff * x^ex * y^ey * z^ez with 0/1 exponents; bit i-1 of a mask is variable i.
struct MultilinearMonomial {
  Residue coeff = 0;
  std::uint32_t ex = 0;
  std::uint32_t ey = 0;
  std::uint32_t ez = 0;

  int degree() const noexcept;
  friend bool operator==(const MultilinearMonomial&, const MultilinearMonomial&) = default;
};

// A collected multilinear polynomial in (x, y, z) over F_p. Terms are sorted
// by (ez, ey, ex) packed key and never carry a zero coefficient.
class MonomialMap {
public:
  MonomialMap() = default;
  MonomialMap(TriangleParams params, std::vector<MultilinearMonomial> terms);

  const TriangleParams& params() const noexcept { return params_; }
  const std::vector<MultilinearMonomial>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  int max_degree() const noexcept;

private:
  TriangleParams params_;
  std::vector<MultilinearMonomial> terms_;
};

struct ExpansionBudget {
  int max_n = 10;
  std::uint32_t max_p = 5;
  // Cap on term products formed while multiplying F by G.
  double max_product_terms = 1.5e8;
};

struct ExpansionStats {
  // Terms formed by the last factor multiplication of F, before collection.
  std::uint64_t f_raw_terms = 0;
  std::uint64_t f_terms = 0;
  std::uint64_t g_terms = 0;
  std::uint64_t product_terms = 0;
};

// Upper estimate of the F*G product work: 4^n times the G term bound.
double expansion_work_estimate(int n, std::uint32_t p);

// Collected expansion of F = prod_i (x_i + y_i + z_i - 1).
MonomialMap expand_F(const TriangleParams& params, ExpansionStats* stats = nullptr);
// Collected expansion of G = 1 - (|x-y|^2 / 2)^(p-1) in x, y.
MonomialMap expand_G(const TriangleParams& params, ExpansionStats* stats = nullptr);
// H = F * G with v^2 -> v. Throws ResourceError when the budget is exceeded.
MonomialMap expand_H(const TriangleParams& params, const ExpansionBudget& budget = {},
                     ExpansionStats* stats = nullptr);

enum class Block : std::uint8_t { X = 0, Y = 1, Z = 2 };

char to_char(Block b);

struct CofactorTerm {
  // Masks of the two blocks other than the entry's block, in X, Y, Z order.
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  Residue coeff = 0;
};

struct DecompositionEntry {
  Block block = Block::X;
  std::uint32_t key = 0;
  std::vector<CofactorTerm> cofactor;
};

// Sum over entries of (block variable monomial `key`) * cofactor(other two).
struct SliceDecomposition {
  TriangleParams params;
  std::vector<DecompositionEntry> entries; // sorted by (block, key)
};

// Slices each monomial off along its lowest-weight block, ties X, then Y, then Z.
SliceDecomposition build_slice_decomposition(const MonomialMap& m);

// Fast pointwise evaluation via submask enumeration of the argument points.
class MonomialEvaluator {
public:
  explicit MonomialEvaluator(const MonomialMap& m);
  Residue operator()(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) const;

private:
  int n_;
  std::uint32_t p_;
  std::shared_ptr<const ResidueTable> table_;
};

class DecompositionEvaluator {
public:
  explicit DecompositionEvaluator(const SliceDecomposition& d);
  Residue operator()(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) const;

private:
  int n_;
  std::uint32_t p_;
  std::shared_ptr<const ResidueTable> terms_;
  // (block, key) pairs that own an entry.
  std::shared_ptr<const ResidueTable> keys_;
};

enum class CheckScope { exhaustive_cube, exhaustive_slice, sampled_slice };

struct CheckPlan {
  CheckScope scope = CheckScope::exhaustive_slice;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static CheckPlan cube() { return {CheckScope::exhaustive_cube, 0, 0}; }
  static CheckPlan slice() { return {CheckScope::exhaustive_slice, 0, 0}; }
  static CheckPlan sampled(std::uint64_t count, std::uint64_t seed) {
    return {CheckScope::sampled_slice, count, seed};
  }
};

struct PointwiseMismatch {
  std::array<SlicePoint, 3> triple;
  Residue expected = 0; // direct evaluation of H
  Residue actual = 0;   // the symbolic object
};

struct PointwiseReport {
  bool passed = true;
  std::uint64_t checked = 0;
  int max_key_weight = 0; // decompositions only
  std::optional<PointwiseMismatch> mismatch;
};

// Compares the expansion with eval_H (slice scopes) or eval_H_field (cube).
PointwiseReport verify_expansion(const MonomialMap& m, CheckPlan plan);
PointwiseReport verify_decomposition(const SliceDecomposition& d, CheckPlan plan);

struct SliceCount {
  std::uint64_t entries = 0;
  std::uint64_t ceiling = 0; // 3 * sum_{j <= floor(D/3)} C(n, j)
  bool within_ceiling = true;
};

SliceCount slice_count(const SliceDecomposition& d);

} // namespace slicerank
