#include "slicerank/poly_expand.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <tuple>

#include "slicerank/rng.hpp"

namespace slicerank {

namespace {

constexpr int kBlockShift = 60;

struct Packing {
  int n;
  std::uint64_t mask;

  explicit Packing(int dim) : n(dim), mask(low_mask(dim)) {}

  std::uint64_t pack(std::uint64_t ex, std::uint64_t ey, std::uint64_t ez) const {
    return ex | (ey << n) | (ez << (2 * n));
  }
  MultilinearMonomial unpack(std::uint64_t key, Residue c) const {
    return {c, static_cast<std::uint32_t>(key & mask),
            static_cast<std::uint32_t>((key >> n) & mask),
            static_cast<std::uint32_t>((key >> (2 * n)) & mask)};
  }
};

using Terms = std::vector<std::pair<std::uint64_t, Residue>>;

Terms to_terms(const ResidueTable& t) {
  Terms out;
  out.reserve(t.size());
  t.for_each_nonzero([&](std::uint64_t k, std::uint32_t v) { out.emplace_back(k, v); });
  std::sort(out.begin(), out.end());
  return out;
}

// Product of two multilinear polynomials; OR of keys realizes v^2 -> v.
Terms multiply(const Terms& a, const Terms& b, std::uint32_t p, std::uint64_t* raw = nullptr) {
  ResidueTable acc(p, std::max(a.size(), b.size()));
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      acc.add(ka | kb, static_cast<std::uint32_t>(std::uint64_t{ca} * cb % p));
  if (raw) *raw = static_cast<std::uint64_t>(a.size()) * b.size();
  return to_terms(acc);
}

MonomialMap to_map(const TriangleParams& params, const Terms& terms) {
  const Packing pk(params.n);
  std::vector<MultilinearMonomial> out;
  out.reserve(terms.size());
  for (const auto& [k, c] : terms) out.push_back(pk.unpack(k, c));
  return MonomialMap(params, std::move(out));
}

void require_packable(const TriangleParams& params) {
  if (params.n > kMaxPackedDimension)
    throw ResourceError("expansion supports n <= " + std::to_string(kMaxPackedDimension),
                        params.n, kMaxPackedDimension);
}

Terms f_terms(const TriangleParams& params, ExpansionStats* stats) {
  const int n = params.n;
  const std::uint32_t p = params.p;
  const Packing pk(n);
  Terms poly{{0, 1}};
  for (int i = 0; i < n; ++i) {
    const std::uint64_t v = std::uint64_t{1} << i;
    const Terms factor{{0, p - 1}, {pk.pack(v, 0, 0), 1}, {pk.pack(0, v, 0), 1},
                       {pk.pack(0, 0, v), 1}};
    std::uint64_t raw = 0;
    poly = multiply(poly, factor, p, &raw);
    if (stats) stats->f_raw_terms = raw;
  }
  if (stats) stats->f_terms = poly.size();
  return poly;
}

Terms g_terms(const TriangleParams& params, ExpansionStats* stats) {
  const int n = params.n;
  const std::uint32_t p = params.p;
  const Packing pk(n);
  // |x-y|^2 / 2 = inv2 * sum_i (x_i + y_i - 2 x_i y_i); the only modular inversion.
  const Residue inv2 = inverse_mod(2, p);
  ResidueTable half(p, 3 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t v = std::uint64_t{1} << i;
    half.add(pk.pack(v, 0, 0), inv2);
    half.add(pk.pack(0, v, 0), inv2);
    half.add(pk.pack(v, v, 0), p - 1);
  }
  Terms base = to_terms(half);
  Terms power{{0, 1}};
  for (std::uint32_t e = p - 1; e; e >>= 1) {
    if (e & 1) power = multiply(power, base, p);
    if (e > 1) base = multiply(base, base, p);
  }
  ResidueTable g(p, power.size() + 1);
  g.add(0, 1);
  for (const auto& [k, c] : power) g.add(k, p - c);
  Terms out = to_terms(g);
  if (stats) stats->g_terms = out.size();
  return out;
}

std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
  return c;
}

template <class F> void for_each_submask(std::uint64_t mask, F&& f) {
  std::uint64_t s = mask;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & mask;
  }
}

template <class Symbolic, class Reference>
PointwiseReport sweep(const TriangleParams& params, CheckPlan plan, const Symbolic& symbolic,
                      const Reference& reference) {
  PointwiseReport report;
  auto visit = [&](const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) {
    const Residue want = reference(x, y, z);
    const Residue got = symbolic(x, y, z);
    ++report.checked;
    if (want != got) {
      report.passed = false;
      report.mismatch = PointwiseMismatch{{x, y, z}, want, got};
      return false;
    }
    return true;
  };

  const int n = params.n;
  switch (plan.scope) {
  case CheckScope::exhaustive_cube: {
    if (n > 6)
      throw ResourceError("exhaustive cube check limited to n <= 6", n, 6);
    const std::uint64_t side = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < side; ++a)
      for (std::uint64_t b = 0; b < side; ++b)
        for (std::uint64_t c = 0; c < side; ++c)
          if (!visit(SlicePoint(n, a), SlicePoint(n, b), SlicePoint(n, c))) return report;
    break;
  }
  case CheckScope::exhaustive_slice: {
    const auto pts = enumerate_slice(n, params.k);
    for (const auto& x : pts)
      for (const auto& y : pts)
        for (const auto& z : pts)
          if (!visit(x, y, z)) return report;
    break;
  }
  case CheckScope::sampled_slice: {
    const auto pts = enumerate_slice(n, params.k);
    Rng rng(plan.seed);
    for (std::uint64_t s = 0; s < plan.samples; ++s) {
      const auto& x = pts[rng.uniform_below(pts.size())];
      const auto& y = pts[rng.uniform_below(pts.size())];
      const auto& z = pts[rng.uniform_below(pts.size())];
      if (!visit(x, y, z)) return report;
    }
    break;
  }
  }
  return report;
}

Residue reference_H(const SlicePoint& x, const SlicePoint& y, const SlicePoint& z,
                    std::uint32_t p, CheckScope scope) {
  return scope == CheckScope::exhaustive_cube ? eval_H_field(x, y, z, p) : eval_H(x, y, z, p);
}

} // namespace

int MultilinearMonomial::degree() const noexcept {
  return std::popcount(ex) + std::popcount(ey) + std::popcount(ez);
}

MonomialMap::MonomialMap(TriangleParams params, std::vector<MultilinearMonomial> terms)
    : params_(params), terms_(std::move(terms)) {}

int MonomialMap::max_degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

double expansion_work_estimate(int n, std::uint32_t p) {
  double g = 0;
  for (int j = 0; j <= std::min<int>(n, static_cast<int>(p) - 1); ++j)
    g += static_cast<double>(binom_u64(n, j)) * std::pow(3.0, j);
  return std::pow(4.0, n) * g;
}

MonomialMap expand_F(const TriangleParams& params, ExpansionStats* stats) {
  require_packable(params);
  return to_map(params, f_terms(params, stats));
}

namespace {

std::string approx(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

} // namespace

MonomialMap expand_G(const TriangleParams& params, ExpansionStats* stats) {
  require_packable(params);
  return to_map(params, g_terms(params, stats));
}

MonomialMap expand_H(const TriangleParams& params, const ExpansionBudget& budget,
                     ExpansionStats* stats) {
  const double work = expansion_work_estimate(params.n, params.p);
  if (params.n > budget.max_n || params.n > kMaxPackedDimension)
    throw ResourceError("expansion budget allows n <= " + std::to_string(budget.max_n) +
                            "; estimated product terms " + approx(work),
                        work, budget.max_product_terms);
  if (params.p > budget.max_p)
    throw ResourceError("expansion budget allows p <= " + std::to_string(budget.max_p) +
                            "; estimated product terms " + approx(work),
                        work, budget.max_product_terms);
  if (work > budget.max_product_terms)
    throw ResourceError("estimated product terms " + approx(work) + " exceed budget " +
                            approx(budget.max_product_terms),
                        work, budget.max_product_terms);

  ExpansionStats local;
  const Terms f = f_terms(params, &local);
  const Terms g = g_terms(params, &local);
  std::uint64_t raw = 0;
  const Terms h = multiply(f, g, params.p, &raw);
  local.product_terms = raw;
  if (stats) *stats = local;
  return to_map(params, h);
}

char to_char(Block b) {
  switch (b) {
  case Block::X:
    return 'X';
  case Block::Y:
    return 'Y';
  case Block::Z:
    return 'Z';
  }
  return '?';
}

SliceDecomposition build_slice_decomposition(const MonomialMap& m) {
  const TriangleParams& params = m.params();
  using Row = std::tuple<std::uint8_t, std::uint32_t, std::uint32_t, std::uint32_t, Residue>;
  std::vector<Row> rows;
  rows.reserve(m.size());
  for (const auto& t : m.terms()) {
    if (t.coeff == 0) throw InternalInconsistency("zero coefficient in collected map");
    const int wx = std::popcount(t.ex), wy = std::popcount(t.ey), wz = std::popcount(t.ez);
    const int lowest = std::min({wx, wy, wz});
    if (lowest > params.r_count)
      throw InternalInconsistency("monomial with every block heavier than floor(D/3) = " +
                                  std::to_string(params.r_count));
    if (wx == lowest)
      rows.emplace_back(0, t.ex, t.ey, t.ez, t.coeff);
    else if (wy == lowest)
      rows.emplace_back(1, t.ey, t.ex, t.ez, t.coeff);
    else
      rows.emplace_back(2, t.ez, t.ex, t.ey, t.coeff);
  }
  std::sort(rows.begin(), rows.end());

  SliceDecomposition d;
  d.params = params;
  for (const auto& [block, key, first, second, coeff] : rows) {
    if (d.entries.empty() || static_cast<std::uint8_t>(d.entries.back().block) != block ||
        d.entries.back().key != key)
      d.entries.push_back({static_cast<Block>(block), key, {}});
    d.entries.back().cofactor.push_back({first, second, coeff});
  }
  return d;
}

MonomialEvaluator::MonomialEvaluator(const MonomialMap& m)
    : n_(m.params().n), p_(m.params().p) {
  const Packing pk(n_);
  auto table = std::make_shared<ResidueTable>(p_, m.size());
  for (const auto& t : m.terms()) table->add(pk.pack(t.ex, t.ey, t.ez), t.coeff);
  table_ = std::move(table);
}

Residue MonomialEvaluator::operator()(const SlicePoint& x, const SlicePoint& y,
                                      const SlicePoint& z) const {
  const Packing pk(n_);
  std::uint64_t acc = 0;
  for_each_submask(x.bits(), [&](std::uint64_t sx) {
    for_each_submask(y.bits(), [&](std::uint64_t sy) {
      for_each_submask(z.bits(), [&](std::uint64_t sz) {
        acc += table_->find(pk.pack(sx, sy, sz));
      });
    });
  });
  return static_cast<Residue>(acc % p_);
}

DecompositionEvaluator::DecompositionEvaluator(const SliceDecomposition& d)
    : n_(d.params.n), p_(d.params.p) {
  const Packing pk(n_);
  std::size_t total = 0;
  for (const auto& e : d.entries) total += e.cofactor.size();
  auto terms = std::make_shared<ResidueTable>(p_, total);
  auto keys = std::make_shared<ResidueTable>(p_, d.entries.size());
  for (const auto& e : d.entries) {
    const std::uint64_t head = (std::uint64_t{static_cast<std::uint8_t>(e.block)} << kBlockShift) |
                               e.key;
    keys->add(head, 1);
    for (const auto& c : e.cofactor)
      terms->add(head | pk.pack(0, c.first, c.second), c.coeff);
  }
  terms_ = std::move(terms);
  keys_ = std::move(keys);
}

Residue DecompositionEvaluator::operator()(const SlicePoint& x, const SlicePoint& y,
                                           const SlicePoint& z) const {
  const Packing pk(n_);
  const std::array<std::uint64_t, 3> pt{x.bits(), y.bits(), z.bits()};
  std::uint64_t acc = 0;
  for (std::uint64_t b = 0; b < 3; ++b) {
    const std::uint64_t own = pt[b];
    const std::uint64_t u = b == 0 ? pt[1] : pt[0];
    const std::uint64_t v = b == 2 ? pt[1] : pt[2];
    for_each_submask(own, [&](std::uint64_t key) {
      const std::uint64_t head = (b << kBlockShift) | key;
      if (!keys_->contains(head)) return;
      for_each_submask(u, [&](std::uint64_t s1) {
        for_each_submask(v, [&](std::uint64_t s2) {
          acc += terms_->find(head | pk.pack(0, s1, s2));
        });
      });
    });
  }
  return static_cast<Residue>(acc % p_);
}

PointwiseReport verify_expansion(const MonomialMap& m, CheckPlan plan) {
  const MonomialEvaluator eval(m);
  const std::uint32_t p = m.params().p;
  return sweep(m.params(), plan, eval,
               [&](const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) {
                 return reference_H(x, y, z, p, plan.scope);
               });
}

PointwiseReport verify_decomposition(const SliceDecomposition& d, CheckPlan plan) {
  const DecompositionEvaluator eval(d);
  const std::uint32_t p = d.params.p;
  PointwiseReport report =
      sweep(d.params, plan, eval, [&](const SlicePoint& x, const SlicePoint& y, const SlicePoint& z) {
        return reference_H(x, y, z, p, plan.scope);
      });
  for (const auto& e : d.entries)
    report.max_key_weight = std::max(report.max_key_weight, std::popcount(e.key));
  return report;
}

SliceCount slice_count(const SliceDecomposition& d) {
  SliceCount c;
  c.entries = d.entries.size();
  std::uint64_t low = 0;
  for (int j = 0; j <= std::min(d.params.r_count, d.params.n); ++j) low += binom_u64(d.params.n, j);
  c.ceiling = 3 * low;
  c.within_ceiling = c.entries <= c.ceiling;
  if (!c.within_ceiling)
    throw InternalInconsistency("decomposition has " + std::to_string(c.entries) +
                                " entries, above the ceiling " + std::to_string(c.ceiling));
  return c;
}

} // namespace slicerank
