#include "slicerank/search_oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "slicerank/rng.hpp"

namespace slicerank {

namespace {

// Fixed-width bitset over the vertices of one hypergraph.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t words) : w_(words, 0) {}

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  bool any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t v) { return v != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : w_) c += static_cast<std::size_t>(std::popcount(v));
    return c;
  }
  // Index of the lowest set bit, or npos.
  std::size_t first() const { return next(0); }
  std::size_t next(std::size_t from) const {
    std::size_t wi = from >> 6;
    if (wi >= w_.size()) return npos;
    std::uint64_t cur = w_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++wi == w_.size()) return npos;
      cur = w_[wi];
    }
  }

  // Lowest index in a & b, or npos.
  static std::size_t first_common(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
      const std::uint64_t v = a.w_[i] & b.w_[i];
      if (v) return (i << 6) + static_cast<std::size_t>(std::countr_zero(v));
    }
    return npos;
  }

  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  }

  static constexpr std::size_t npos = ~std::size_t{0};

private:
  std::vector<std::uint64_t> w_;
};

std::size_t words_for(std::size_t m) { return (m + 63) / 64; }

std::vector<Bits> adjacency(const std::vector<SlicePoint>& v, int side_squared) {
  const std::size_t m = v.size();
  std::vector<Bits> nbr(m, Bits(words_for(m)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (squared_distance(v[i], v[j]) == side_squared) {
        nbr[i].set(j);
        nbr[j].set(i);
      }
  return nbr;
}

class BranchAndBound {
public:
  BranchAndBound(const TriangleHypergraph& h, std::uint64_t max_nodes)
      : m_(h.vertices.size()), words_(words_for(m_)), max_nodes_(max_nodes) {
    // Descending hyperdegree, ties by canonical index.
    std::vector<std::uint64_t> degree(m_, 0);
    for (const auto& e : h.edges)
      for (auto v : e) ++degree[v];
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
      return degree[a] > degree[b];
    });
    std::vector<std::uint32_t> position(m_);
    for (std::size_t i = 0; i < m_; ++i) position[order_[i]] = static_cast<std::uint32_t>(i);

    incident_.assign(m_, {});
    for (const auto& e : h.edges) {
      const auto a = position[e[0]], b = position[e[1]], c = position[e[2]];
      incident_[a].push_back({b, c});
      incident_[b].push_back({a, c});
      incident_[c].push_back({a, b});
    }
  }

  void seed_incumbent(const std::vector<std::uint32_t>& original_indices) {
    if (original_indices.size() <= best_.size() && !best_.empty()) return;
    best_ = original_indices;
  }

  bool run() {
    Bits cand(words_);
    for (std::size_t i = 0; i < m_; ++i) cand.set(i);
    std::vector<Bits> conf(m_, Bits(words_));
    current_.clear();
    search(cand, conf);
    return !aborted_;
  }

  std::uint64_t nodes() const { return nodes_; }

  std::vector<std::uint32_t> best() const {
    std::vector<std::uint32_t> out = best_;
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  // Disjoint constraints among the candidates: conflict pairs (two candidates
  // that close a triangle with a chosen vertex) and candidate-only triangles.
  // Each one costs the bound at least one vertex.
  std::size_t packing(const Bits& cand, const std::vector<Bits>& conf) const {
    Bits avail = cand;
    std::size_t count = 0;
    for (std::size_t a = avail.first(); a != Bits::npos; a = avail.next(a + 1)) {
      const std::size_t b = Bits::first_common(conf[a], avail);
      if (b == Bits::npos || b == a) continue;
      avail.reset(a);
      avail.reset(b);
      ++count;
    }
    for (std::size_t a = avail.first(); a != Bits::npos; a = avail.next(a + 1)) {
      for (const auto& [b, c] : incident_[a]) {
        if (!avail.test(b) || !avail.test(c)) continue;
        avail.reset(a);
        avail.reset(b);
        avail.reset(c);
        ++count;
        break;
      }
    }
    return count;
  }

  void search(Bits cand, const std::vector<Bits>& conf) {
    if (aborted_) return;
    if (++nodes_ > max_nodes_) {
      aborted_ = true;
      --nodes_;
      return;
    }
    if (current_.size() > best_.size()) {
      best_.clear();
      for (auto i : current_) best_.push_back(order_[i]);
    }
    while (cand.any()) {
      const std::size_t size_cap = current_.size() + cand.count() - packing(cand, conf);
      if (size_cap <= best_.size()) return;

      const std::size_t v = cand.first();
      cand.reset(v);

      // Include v: candidates that now close a triangle are dropped, and
      // candidate pairs around v become conflicts.
      Bits next = cand;
      next.and_not(conf[v]);
      std::vector<Bits> next_conf = conf;
      for (const auto& [a, b] : incident_[v])
        if (next.test(a) && next.test(b)) {
          next_conf[a].set(b);
          next_conf[b].set(a);
        }
      current_.push_back(static_cast<std::uint32_t>(v));
      search(std::move(next), next_conf);
      current_.pop_back();
      if (aborted_) return;
      // Exclude v: continue the loop with v removed.
    }
  }

  std::size_t m_;
  std::size_t words_;
  std::uint64_t max_nodes_;
  std::vector<std::uint32_t> order_;
  std::vector<std::vector<std::array<std::uint32_t, 2>>> incident_;
  std::vector<std::uint32_t> current_;
  std::vector<std::uint32_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

} // namespace

TriangleHypergraph enumerate_triangles(const TriangleParams& params,
                                       const EnumerationBudget& budget) {
  TriangleHypergraph h;
  h.params = params;
  try {
    h.vertices = enumerate_slice(params.n, params.k);
  } catch (const ResourceError& e) {
    throw ResourceError(std::string("triangle enumeration: ") + e.what(), e.required(),
                        static_cast<double>(budget.max_vertices));
  }
  if (h.vertices.size() > budget.max_vertices)
    throw ResourceError("slice has " + std::to_string(h.vertices.size()) +
                            " points, enumeration budget is " +
                            std::to_string(budget.max_vertices),
                        static_cast<double>(h.vertices.size()),
                        static_cast<double>(budget.max_vertices));

  const auto nbr = adjacency(h.vertices, params.side_squared());
  const std::size_t m = h.vertices.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = nbr[i].next(i + 1); j != Bits::npos; j = nbr[i].next(j + 1))
      for (std::size_t l = nbr[j].next(j + 1); l != Bits::npos; l = nbr[j].next(l + 1))
        if (nbr[i].test(l))
          h.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             static_cast<std::uint32_t>(l)});
  return h;
}

std::vector<std::uint32_t> greedy_triangle_free(const TriangleHypergraph& h, std::uint64_t seed) {
  const std::size_t m = h.vertices.size();
  std::vector<std::vector<std::array<std::uint32_t, 2>>> incident(m);
  for (const auto& e : h.edges) {
    incident[e[0]].push_back({e[1], e[2]});
    incident[e[1]].push_back({e[0], e[2]});
    incident[e[2]].push_back({e[0], e[1]});
  }

  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_below(i)]);

  Bits chosen(words_for(m));
  std::vector<std::uint32_t> out;
  for (auto v : order) {
    bool blocked = false;
    for (const auto& pr : incident[v])
      if (chosen.test(pr[0]) && chosen.test(pr[1])) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    chosen.set(v);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(OracleStatus s) {
  return s == OracleStatus::exact ? "exact" : "lower_bound_only";
}

OracleResult max_triangle_free(const TriangleHypergraph& h, const SearchBudget& budget) {
  const std::size_t m = h.vertices.size();
  if (m > budget.max_vertices)
    throw ResourceError("branch and bound limited to " + std::to_string(budget.max_vertices) +
                            " vertices, slice has " + std::to_string(m),
                        static_cast<double>(m), static_cast<double>(budget.max_vertices));
  BranchAndBound bb(h, budget.max_nodes);
  std::vector<std::uint32_t> incumbent;
  for (std::uint64_t i = 0; i < 8; ++i) {
    auto g = greedy_triangle_free(h, budget.seed + i);
    if (g.size() > incumbent.size()) incumbent = std::move(g);
  }
  bb.seed_incumbent(incumbent);
  const bool complete = bb.run();

  OracleResult res;
  res.witness = bb.best();
  res.size = res.witness.size();
  res.status = complete ? OracleStatus::exact : OracleStatus::lower_bound_only;
  res.nodes_expanded = bb.nodes();
  res.budget_spent = bb.nodes();
  res.greedy_size = incumbent.size();
  return res;
}

bool is_triangle_free(const std::vector<SlicePoint>& set, int side_squared) {
  const std::size_t m = set.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (squared_distance(set[i], set[j]) != side_squared) continue;
      for (std::size_t l = j + 1; l < m; ++l)
        if (squared_distance(set[i], set[l]) == side_squared &&
            squared_distance(set[j], set[l]) == side_squared)
          return false;
    }
  return true;
}

} // namespace slicerank
