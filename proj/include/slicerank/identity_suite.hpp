#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicerank/modular_tensor.hpp"

namespace slicerank {

struct IdentityCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<std::array<SlicePoint, 3>> first_violation;
};

struct IdentitySuiteResult {
  TriangleParams params;
  bool exhaustive = true;
  std::uint64_t triples = 0;
  std::vector<IdentityCheck> checks;
  // Diagonality of H on a greedy triangle-free subset of the slice.
  std::optional<DiagonalCertificate> witness_certificate;

  bool passed() const;
};

struct IdentitySuiteOptions {
  bool exhaustive = true;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  bool check_witness = true;
  std::uint64_t greedy_seed = 0;
  // Larger witnesses are checked in sampled mode.
  std::uint64_t complete_cap = 512;
};

// Profile identities, the distance bound for a1 = 0, and the F/G/H
// invariants over triples of the weight-k slice.
IdentitySuiteResult run_identity_suite(const TriangleParams& params,
                                       const IdentitySuiteOptions& options = {});

} // namespace slicerank
