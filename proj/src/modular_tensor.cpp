#include "slicerank/modular_tensor.hpp"

#include <algorithm>
#include <set>

#include "slicerank/rng.hpp"

namespace slicerank {

namespace {

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod64(r, b, m);
    b = mul_mod64(b, b, m);
    e >>= 1;
  }
  return r;
}

void require_same_dim(const SlicePoint& x, const SlicePoint& y) {
  if (x.dim() != y.dim()) throw DomainError("dimension mismatch");
}

} // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (v % q == 0) return v == q;
  }
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod64(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod64(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t smallest_odd_prime_above(std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0) throw DomainError("smallest_odd_prime_above needs q > 0");
  std::uint64_t c = num / den + 1; // least integer strictly greater than num/den
  if (c < 3) c = 3;
  if (c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

TriangleParams TriangleParams::for_slice(int n, int k) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (k < 1 || k > n) throw DomainError("slice weight must satisfy 1 <= k <= n");
  const auto p = smallest_odd_prime_above(static_cast<std::uint64_t>(k), 4);
  return with_prime(n, k, static_cast<std::uint32_t>(p));
}

TriangleParams TriangleParams::with_prime(int n, int k, std::uint32_t p) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (k < 0 || k > n) throw DomainError("slice weight must satisfy 0 <= k <= n");
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
  TriangleParams t;
  t.n = n;
  t.k = k;
  t.p = p;
  const long D = std::min<long>(3L * n, n + 2L * (static_cast<long>(p) - 1));
  t.degree_bound = static_cast<int>(D);
  t.r_count = static_cast<int>(D / 3);
  return t;
}

bool TriangleParams::canonical_prime() const noexcept {
  return k >= 1 && smallest_odd_prime_above(static_cast<std::uint64_t>(k), 4) == p;
}

Residue pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  return static_cast<Residue>(pow_mod64(base, exp, p));
}

Residue inverse_mod(Residue a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse");
  return pow_mod(a, p - 2, p);
}

Residue eval_F(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
               std::uint32_t p) {
  require_same_dim(x, y);
  require_same_dim(x, z);
  std::uint64_t acc = 1;
  for (int i = 1; i <= x.dim(); ++i) {
    const int s = x.coordinate(i) + y.coordinate(i) + z.coordinate(i);
    acc = acc * static_cast<std::uint64_t>((s - 1 + static_cast<long>(p)) % p) % p;
    if (acc == 0) return 0;
  }
  return static_cast<Residue>(acc);
}

Residue eval_G(const SlicePoint& x, const SlicePoint& y, std::uint32_t p) {
  const auto h = static_cast<std::uint64_t>(half_squared_distance(x, y));
  return static_cast<Residue>((1 + p - pow_mod(h % p, p - 1, p)) % p);
}

Residue eval_H(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
               std::uint32_t p) {
  const Residue f = eval_F(x, y, z, p);
  const Residue g = eval_G(x, y, p);
  return static_cast<Residue>(std::uint64_t{f} * g % p);
}

Residue eval_H_field(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
                     std::uint32_t p) {
  const Residue f = eval_F(x, y, z, p);
  const auto d = static_cast<std::uint64_t>(squared_distance(x, y));
  const std::uint64_t half = d % p * inverse_mod(2, p) % p;
  const Residue g = static_cast<Residue>((1 + p - pow_mod(half, p - 1, p)) % p);
  return static_cast<Residue>(std::uint64_t{f} * g % p);
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::zero_diagonal:
    return "zero_diagonal";
  case ViolationKind::nonzero_off_diagonal:
    return "nonzero_off_diagonal";
  case ViolationKind::triangle_present:
    return "triangle_present";
  }
  return "unknown";
}

DiagonalCertificate verify_diagonal_on(const std::vector<SlicePoint>& set,
                                       const TriangleParams& params, DiagonalCheckMode mode) {
  std::set<std::uint64_t> seen;
  for (const auto& a : set) {
    if (a.dim() != params.n) throw DomainError("point dimension differs from params.n");
    if (a.weight() != params.k) throw DomainError("point weight differs from params.k");
    if (!seen.insert(a.bits()).second) throw DomainError("duplicate point in set");
  }

  const std::uint32_t p = params.p;
  DiagonalCertificate cert;
  cert.params = params;
  cert.set_size = set.size();
  cert.status = mode.mode;

  for (const auto& a : set) {
    const Residue c = eval_H(a, a, a, p);
    if (c == 0) {
      cert.violation = DiagonalViolation{ViolationKind::zero_diagonal, {a, a, a}, c};
      return cert;
    }
    cert.diagonal_values.emplace_back(a, c);
  }

  auto check = [&](const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) {
    const Residue h = eval_H(x, y, z, p);
    if (h != 0) {
      cert.violation = DiagonalViolation{ViolationKind::nonzero_off_diagonal, {x, y, z}, h};
      return false;
    }
    ++cert.off_diagonal_checked;
    return true;
  };

  const std::size_t m = set.size();
  if (mode.mode == DiagonalMode::sampled) {
    if (m < 2) return cert;
    Rng rng(mode.seed);
    std::uint64_t drawn = 0;
    while (drawn < mode.samples) {
      const auto i = rng.uniform_below(m), j = rng.uniform_below(m), l = rng.uniform_below(m);
      if (i == j && j == l) continue;
      ++drawn;
      if (!check(set[i], set[j], set[l])) return cert;
    }
    return cert;
  }

  auto by_bits = [](const SlicePoint* a, const SlicePoint* b) { return a->bits() < b->bits(); };
  // Visits each distinct ordering of {x, y, z}; false if one has H != 0.
  auto check_orderings = [&](const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) {
    std::array<const SlicePoint*, 3> perm{&x, &y, &z};
    std::sort(perm.begin(), perm.end(), by_bits);
    do {
      if (!check(*perm[0], *perm[1], *perm[2])) return false;
    } while (std::next_permutation(perm.begin(), perm.end(), by_bits));
    return true;
  };

  // Unordered index triples i <= j <= l; F is symmetric so it is evaluated
  // once per triple and only triples with F != 0 are expanded into orderings.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      for (std::size_t l = j; l < m; ++l) {
        if (i == l) continue;
        const auto &x = set[i], &y = set[j], &z = set[l];
        const bool distinct = i != j && j != l;
        if (distinct && is_equilateral(x, y, z, params.side_squared())) {
          if (!check_orderings(x, y, z)) return cert;
          cert.violation = DiagonalViolation{ViolationKind::triangle_present, {x, y, z}, 0};
          return cert;
        }
        if (eval_F(x, y, z, p) == 0) {
          cert.off_diagonal_checked += distinct ? 6 : 3;
          continue;
        }
        if (!check_orderings(x, y, z)) return cert;
      }
    }
  }
  return cert;
}

} // namespace slicerank
