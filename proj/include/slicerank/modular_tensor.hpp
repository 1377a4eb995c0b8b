#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicerank/hamming.hpp"

namespace slicerank {

using Residue = std::uint32_t;

// Deterministic Miller-Rabin, exact on the full 64-bit range.
bool is_prime(std::uint64_t v);

// Least odd prime strictly greater than num/den (num, den > 0).
std::uint64_t smallest_odd_prime_above(std::uint64_t num, std::uint64_t den = 1);

// The instance (n, k, p) and the derived degree bound D = min(3n, n + 2(p-1)).
struct TriangleParams {
  int n = 0;
  int k = 0;
  std::uint32_t p = 3;
  int degree_bound = 0;
  int r_count = 0; // floor(D / 3)

  // p chosen as the smallest odd prime above k/4. Requires 1 <= k <= n.
  static TriangleParams for_slice(int n, int k);
  // Explicit odd prime; 0 <= k <= n. Used for expansions and cross-checks.
  static TriangleParams with_prime(int n, int k, std::uint32_t p);

  // 1 <= k <= n/2, the range the counting argument is stated for.
  bool within_hypothesis() const noexcept { return k >= 1 && 2 * k <= n; }
  // p is the canonical choice for k.
  bool canonical_prime() const noexcept;
  // k/4 < p <= k/2: the window where H can be nonzero off the diagonal.
  bool in_active_window() const noexcept {
    return 4 * static_cast<long>(p) > k && 2 * static_cast<long>(p) <= k;
  }
  int side_squared() const noexcept { return 2 * static_cast<int>(p); }

  friend bool operator==(const TriangleParams&, const TriangleParams&) = default;
};

Residue pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p);
Residue inverse_mod(Residue a, std::uint32_t p);

// prod_i (x_i + y_i + z_i - 1) mod p.
Residue eval_F(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
               std::uint32_t p);
// 1 - (|x-y|^2 / 2)^(p-1) mod p. Requires equal weights.
Residue eval_G(const SlicePoint& x, const SlicePoint& y, std::uint32_t p);
Residue eval_H(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
               std::uint32_t p);
// H on arbitrary points of the cube: the half distance is taken in F_p via
// the inverse of 2, so odd distances are allowed. Agrees with eval_H on slices.
Residue eval_H_field(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
                     std::uint32_t p);

enum class DiagonalMode { complete, sampled };

struct DiagonalCheckMode {
  DiagonalMode mode = DiagonalMode::complete;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static DiagonalCheckMode complete() { return {}; }
  static DiagonalCheckMode sampled(std::uint64_t count, std::uint64_t seed) {
    return {DiagonalMode::sampled, count, seed};
  }
};

enum class ViolationKind { zero_diagonal, nonzero_off_diagonal, triangle_present };

std::string to_string(ViolationKind kind);

struct DiagonalViolation {
  ViolationKind kind;
  std::array<SlicePoint, 3> triple;
  Residue value = 0;
};

struct DiagonalCertificate {
  TriangleParams params;
  std::uint64_t set_size = 0;
  // c_a for each a in A, in the order A was given.
  std::vector<std::pair<SlicePoint, Residue>> diagonal_values;
  std::uint64_t off_diagonal_checked = 0;
  DiagonalMode status = DiagonalMode::complete;
  std::optional<DiagonalViolation> violation;

  bool passed() const noexcept { return !violation.has_value(); }
};

// Checks that H restricted to A x A x A is diagonal with nonzero diagonal.
// Stops at the first violation, which is recorded in the certificate.
DiagonalCertificate verify_diagonal_on(const std::vector<SlicePoint>& set,
                                       const TriangleParams& params,
                                       DiagonalCheckMode mode = DiagonalCheckMode::complete());

} // namespace slicerank
