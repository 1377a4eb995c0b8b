#include "slicerank/identity_suite.hpp"

#include <algorithm>
#include <numeric>

#include "slicerank/rng.hpp"
#include "slicerank/search_oracle.hpp"

namespace slicerank {

namespace {

enum Check : std::size_t {
  kProfileSum,
  kProfileWeight,
  kProfileA1Zero,
  kProfileSymmetry,
  kDistanceSum,
  kDistanceBound,
  kTriangleInequality,
  kFSupport,
  kFSymmetry,
  kGSupport,
  kHDiagonal,
  kHOffDiagonal,
  kCheckCount
};

const char* check_name(std::size_t c) {
  static constexpr const char* names[kCheckCount] = {
      "profile_sum",      "profile_weight",      "profile_a1_zero",  "profile_symmetry",
      "distance_sum",     "distance_bound",      "triangle_inequality", "f_support",
      "f_symmetry",       "g_support",           "h_diagonal",       "h_off_diagonal"};
  return names[c];
}

SlicePoint permute(const SlicePoint& x, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int i = 0; i < x.dim(); ++i)
    if ((x.bits() >> i) & 1u) out |= std::uint64_t{1} << perm[static_cast<std::size_t>(i)];
  return SlicePoint(x.dim(), out);
}

// sqrt(a) <= sqrt(b) + sqrt(c) in integers.
bool sqrt_triangle(long a, long b, long c) {
  const long slack = a - b - c;
  return slack <= 0 || slack * slack <= 4 * b * c;
}

class Suite {
public:
  Suite(const TriangleParams& params, std::uint64_t seed) : params_(params), rng_(seed) {
    for (std::size_t c = 0; c < kCheckCount; ++c) checks_.push_back({check_name(c), 0, 0, {}});
    perm_.resize(static_cast<std::size_t>(params.n));
    std::iota(perm_.begin(), perm_.end(), 0);
    for (std::size_t i = perm_.size(); i > 1; --i)
      std::swap(perm_[i - 1], perm_[rng_.uniform_below(i)]);
  }

  void record(std::size_t c, bool ok, const SlicePoint& x, const SlicePoint& y,
              const SlicePoint& z) {
    IdentityCheck& chk = checks_[c];
    ++chk.checked;
    if (ok) return;
    ++chk.violations;
    if (!chk.first_violation) chk.first_violation = std::array<SlicePoint, 3>{x, y, z};
  }

  void triple(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) {
    const int n = params_.n, k = params_.k;
    const std::uint32_t p = params_.p;
    const CoordinateProfile a = coordinate_profile(x, y, z);
    record(kProfileSum, a.a0 + a.a1 + a.a2 + a.a3 == n, x, y, z);
    record(kProfileWeight, a.a1 + 2 * a.a2 + 3 * a.a3 == 3 * k, x, y, z);
    if (a.a1 == 0) record(kProfileA1Zero, a.a2 == 3 * n - 3 * k - 3 * a.a0, x, y, z);
    record(kProfileSymmetry,
           coordinate_profile(y, x, z) == a && coordinate_profile(z, y, x) == a &&
               coordinate_profile(y, z, x) == a &&
               coordinate_profile(permute(x, perm_), permute(y, perm_), permute(z, perm_)) == a,
           x, y, z);

    const int dxy = squared_distance(x, y), dyz = squared_distance(y, z),
              dzx = squared_distance(z, x);
    record(kDistanceSum, dxy + dyz + dzx == 2 * (a.a1 + a.a2), x, y, z);
    if (a.a1 == 0) {
      const int expect = 2 * n - 2 * k - 2 * a.a0;
      record(kDistanceBound,
             dxy == expect && dyz == expect && dzx == expect && 2 * half_squared_distance(x, y) <= k,
             x, y, z);
    }
    record(kTriangleInequality,
           sqrt_triangle(dxy, dyz, dzx) && sqrt_triangle(dyz, dzx, dxy) &&
               sqrt_triangle(dzx, dxy, dyz),
           x, y, z);

    const Residue f = eval_F(x, y, z, p);
    record(kFSupport, (f != 0) == (a.a1 == 0), x, y, z);
    record(kFSymmetry,
           eval_F(x, z, y, p) == f && eval_F(y, x, z, p) == f && eval_F(y, z, x, p) == f &&
               eval_F(z, x, y, p) == f && eval_F(z, y, x, p) == f,
           x, y, z);

    const bool diagonal = x == y && y == z;
    if (!diagonal) {
      const Residue h = eval_H(x, y, z, p);
      bool ok = true;
      if (h != 0) {
        const bool distinct = x != y && y != z && x != z;
        ok = distinct && is_equilateral(x, y, z, params_.side_squared());
      }
      record(kHOffDiagonal, ok, x, y, z);
    }
  }

  void pair(const SlicePoint& x, const SlicePoint& y) {
    const std::uint32_t p = params_.p;
    const int h = half_squared_distance(x, y);
    record(kGSupport, (eval_G(x, y, p) != 0) == (h % static_cast<int>(p) == 0), x, y, y);
  }

  void point(const SlicePoint& x) {
    const std::uint32_t p = params_.p;
    const int n = params_.n, k = params_.k;
    std::uint64_t expect = pow_mod(2, static_cast<std::uint64_t>(k), p);
    if ((n - k) % 2 != 0) expect = (p - expect) % p;
    const Residue h = eval_H(x, x, x, p);
    record(kHDiagonal, h == expect && h != 0, x, x, x);
  }

  Rng& rng() { return rng_; }
  std::vector<IdentityCheck> take() { return std::move(checks_); }

private:
  TriangleParams params_;
  Rng rng_;
  std::vector<int> perm_;
  std::vector<IdentityCheck> checks_;
};

} // namespace

bool IdentitySuiteResult::passed() const {
  for (const auto& c : checks)
    if (c.violations) return false;
  return !witness_certificate || witness_certificate->passed();
}

IdentitySuiteResult run_identity_suite(const TriangleParams& params,
                                       const IdentitySuiteOptions& options) {
  const auto pts = enumerate_slice(params.n, params.k);
  Suite suite(params, options.seed);
  IdentitySuiteResult out;
  out.params = params;
  out.exhaustive = options.exhaustive;

  for (const auto& x : pts) suite.point(x);
  if (options.exhaustive) {
    for (const auto& x : pts)
      for (const auto& y : pts) {
        suite.pair(x, y);
        for (const auto& z : pts) suite.triple(x, y, z);
      }
    out.triples = static_cast<std::uint64_t>(pts.size()) * pts.size() * pts.size();
  } else {
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const auto& x = pts[suite.rng().uniform_below(pts.size())];
      const auto& y = pts[suite.rng().uniform_below(pts.size())];
      const auto& z = pts[suite.rng().uniform_below(pts.size())];
      suite.pair(x, y);
      suite.triple(x, y, z);
    }
    out.triples = options.samples;
  }
  out.checks = suite.take();

  if (options.check_witness) {
    const auto h = enumerate_triangles(params);
    const auto idx = greedy_triangle_free(h, options.greedy_seed);
    std::vector<SlicePoint> witness;
    for (auto i : idx) witness.push_back(h.vertices[i]);
    const auto mode = witness.size() <= options.complete_cap
                          ? DiagonalCheckMode::complete()
                          : DiagonalCheckMode::sampled(options.samples, options.seed);
    out.witness_certificate = verify_diagonal_on(witness, params, mode);
  }
  return out;
}

} // namespace slicerank
