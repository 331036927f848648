#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgx/errors.hpp"
#include "sgx/vertex_set.hpp"

namespace sgx {

enum class Sign : std::int8_t { negative = -1, positive = 1 };

inline Sign operator*(Sign a, Sign b) {
  return static_cast<int>(a) * static_cast<int>(b) > 0 ? Sign::positive : Sign::negative;
}
inline Sign flip(Sign s) { return s == Sign::positive ? Sign::negative : Sign::positive; }
inline int to_int(Sign s) { return static_cast<int>(s); }

struct SignedEdge {
  Vertex u;
  Vertex v;
  Sign sign = Sign::positive;
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// Number of unordered vertex pairs on n vertices.
constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Position of {i, j} (i < j) in the lexicographic pair order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
constexpr std::size_t lex_pair_index(std::size_t n, Vertex i, Vertex j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// A signed graph on vertices 0..n-1: an underlying simple graph plus a
/// +1/-1 label per edge. Values are immutable once built; use Builder or
/// the free operations below to derive new graphs.
class SignedGraph {
 public:
  class Builder;

  SignedGraph() = default;
  explicit SignedGraph(std::size_t n) : n_(n), rows_(n, VertexSet(n)), neg_((pair_count(n) + 63) / 64, 0) {}

  static SignedGraph from_edges(std::size_t n, std::span<const SignedEdge> edges);
  static SignedGraph from_edges(std::size_t n, std::initializer_list<SignedEdge> edges) {
    return from_edges(n, std::span<const SignedEdge>(edges.begin(), edges.size()));
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return m_; }

  bool has_edge(Vertex i, Vertex j) const {
    check_vertex(i);
    check_vertex(j);
    return i != j && rows_[i].contains(j);
  }

  /// Sign of edge {i, j}; throws DomainError if the pair is not an edge.
  Sign sign(Vertex i, Vertex j) const {
    if (!has_edge(i, j))
      throw DomainError("{" + std::to_string(i) + "," + std::to_string(j) + "} is not an edge");
    return negative_bit(i, j) ? Sign::negative : Sign::positive;
  }

  /// Signed adjacency entry: sign of {i,j} if adjacent, 0 otherwise.
  int entry(Vertex i, Vertex j) const {
    if (i == j || !rows_[i].contains(j)) return 0;
    return negative_bit(i, j) ? -1 : 1;
  }

  const VertexSet& neighbors(Vertex v) const {
    check_vertex(v);
    return rows_[v];
  }
  std::size_t degree(Vertex v) const { return neighbors(v).count(); }

  /// Edges in lexicographic (i, j), i < j order.
  std::vector<SignedEdge> edges() const {
    std::vector<SignedEdge> out;
    out.reserve(m_);
    for (Vertex i = 0; i < n_; ++i)
      for (Vertex j : rows_[i])
        if (j > i) out.push_back({i, j, negative_bit(i, j) ? Sign::negative : Sign::positive});
    return out;
  }

  std::size_t negative_edge_count() const {
    std::size_t c = 0;
    for (auto w : neg_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Same underlying graph with every edge positive.
  SignedGraph underlying() const {
    SignedGraph g = *this;
    std::fill(g.neg_.begin(), g.neg_.end(), 0);
    return g;
  }

  bool same_underlying(const SignedGraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

  friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

 private:
  friend class Builder;

  void check_vertex(Vertex v) const {
    if (v >= n_)
      throw DomainError("vertex " + std::to_string(v) + " out of range for order " + std::to_string(n_));
  }
  bool negative_bit(Vertex i, Vertex j) const {
    if (i > j) std::swap(i, j);
    const std::size_t k = lex_pair_index(n_, i, j);
    return (neg_[k >> 6] >> (k & 63)) & 1u;
  }
  void set_negative_bit(Vertex i, Vertex j, bool neg) {
    if (i > j) std::swap(i, j);
    const std::size_t k = lex_pair_index(n_, i, j);
    if (neg)
      neg_[k >> 6] |= std::uint64_t{1} << (k & 63);
    else
      neg_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<VertexSet> rows_;
  std::vector<std::uint64_t> neg_;  // one bit per lexicographic pair, 1 = negative
};

class SignedGraph::Builder {
 public:
  explicit Builder(std::size_t n) : g_(n) {}
  explicit Builder(SignedGraph g) : g_(std::move(g)) {}

  std::size_t order() const { return g_.n_; }

  /// Adds {i, j} with the given sign. Re-adding an existing edge overwrites its sign.
  Builder& add_edge(Vertex i, Vertex j, Sign s = Sign::positive) {
    g_.check_vertex(i);
    g_.check_vertex(j);
    if (i == j) throw DomainError("self-loop at vertex " + std::to_string(i));
    if (!g_.rows_[i].contains(j)) {
      g_.rows_[i].insert(j);
      g_.rows_[j].insert(i);
      ++g_.m_;
    }
    g_.set_negative_bit(i, j, s == Sign::negative);
    return *this;
  }
  Builder& remove_edge(Vertex i, Vertex j) {
    if (g_.has_edge(i, j)) {
      g_.rows_[i].erase(j);
      g_.rows_[j].erase(i);
      g_.set_negative_bit(i, j, false);
      --g_.m_;
    }
    return *this;
  }
  Builder& set_sign(Vertex i, Vertex j, Sign s) {
    if (!g_.has_edge(i, j))
      throw DomainError("{" + std::to_string(i) + "," + std::to_string(j) + "} is not an edge");
    g_.set_negative_bit(i, j, s == Sign::negative);
    return *this;
  }
  Builder& flip_sign(Vertex i, Vertex j) { return set_sign(i, j, flip(g_.sign(i, j))); }

  SignedGraph build() && { return std::move(g_); }
  const SignedGraph& peek() const { return g_; }

 private:
  SignedGraph g_;
};

inline SignedGraph SignedGraph::from_edges(std::size_t n, std::span<const SignedEdge> edges) {
  Builder b(n);
  for (const auto& e : edges) b.add_edge(e.u, e.v, e.sign);
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Operations

/// Flips the sign of every edge with exactly one endpoint in `u`.
inline SignedGraph switching(const SignedGraph& g, const VertexSet& u) {
  if (u.universe() != g.order()) throw DomainError("switching set universe does not match graph order");
  SignedGraph::Builder b(g);
  for (const auto& e : g.edges())
    if (u.contains(e.u) != u.contains(e.v)) b.set_sign(e.u, e.v, flip(e.sign));
  return std::move(b).build();
}

inline SignedGraph negate(const SignedGraph& g) {
  SignedGraph::Builder b(g);
  for (const auto& e : g.edges()) b.set_sign(e.u, e.v, flip(e.sign));
  return std::move(b).build();
}

/// Subgraph induced by `s`, relabelled 0..|s|-1 in increasing vertex order.
/// The empty set yields the 0-vertex graph.
inline SignedGraph induced_subgraph(const SignedGraph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw DomainError("vertex set universe does not match graph order");
  const auto verts = s.members();
  SignedGraph::Builder b(verts.size());
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t c = a + 1; c < verts.size(); ++c)
      if (g.has_edge(verts[a], verts[c])) b.add_edge(a, c, g.sign(verts[a], verts[c]));
  return std::move(b).build();
}

/// Relabels vertices: vertex `perm[p]` of g becomes vertex p of the result.
inline SignedGraph relabel(const SignedGraph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.order();
  if (perm.size() != n) throw DomainError("permutation length does not match graph order");
  std::vector<char> seen(n, 0);
  for (Vertex v : perm) {
    if (v >= n || seen[v]) throw DomainError("not a permutation");
    seen[v] = 1;
  }
  SignedGraph::Builder b(n);
  for (Vertex p = 0; p < n; ++p)
    for (Vertex q = p + 1; q < n; ++q)
      if (g.has_edge(perm[p], perm[q])) b.add_edge(p, q, g.sign(perm[p], perm[q]));
  return std::move(b).build();
}

/// Product of edge signs along the closed walk v0 v1 ... vk v0. A trailing
/// repeat of v0 is accepted.
inline Sign cycle_sign(const SignedGraph& g, std::span<const Vertex> cycle) {
  std::size_t len = cycle.size();
  if (len >= 2 && cycle.front() == cycle.back()) --len;
  if (len < 2) throw DomainError("cycle needs at least two vertices");
  Sign s = Sign::positive;
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex a = cycle[i], b = cycle[(i + 1) % len];
    if (!g.has_edge(a, b))
      throw DomainError("{" + std::to_string(a) + "," + std::to_string(b) + "} in cycle is not an edge");
    s = s * g.sign(a, b);
  }
  return s;
}

struct SpanningForest {
  std::vector<Vertex> parent;      // parent[root] == root
  std::vector<Sign> label;         // switching label making tree edges positive
  std::vector<std::size_t> component;
  std::size_t components = 0;
  bool is_tree_edge(Vertex a, Vertex b) const {
    return (parent[a] == b && a != b) || (parent[b] == a && a != b);
  }
};

/// BFS forest rooted at the smallest vertex of each component, neighbours
/// visited in increasing order. Labels satisfy label(child) = label(parent) *
/// sign(parent, child), so switching at {v : label(v) < 0} makes every tree
/// edge positive.
inline SpanningForest canonical_forest(const SignedGraph& g) {
  const std::size_t n = g.order();
  SpanningForest f;
  f.parent.assign(n, n);
  f.label.assign(n, Sign::positive);
  f.component.assign(n, n);
  std::queue<Vertex> q;
  for (Vertex root = 0; root < n; ++root) {
    if (f.component[root] != n) continue;
    f.parent[root] = root;
    f.component[root] = f.components;
    q.push(root);
    while (!q.empty()) {
      const Vertex a = q.front();
      q.pop();
      for (Vertex b : g.neighbors(a)) {
        if (f.component[b] != n) continue;
        f.parent[b] = a;
        f.component[b] = f.components;
        f.label[b] = f.label[a] * g.sign(a, b);
        q.push(b);
      }
    }
    ++f.components;
  }
  return f;
}

inline bool is_connected(const SignedGraph& g) { return g.order() <= 1 || canonical_forest(g).components == 1; }

/// Switching-equivalent signature in which the canonical spanning forest is
/// all-positive. Two signatures of one labelled graph are switching
/// equivalent iff this function maps them to the same graph.
inline SignedGraph canonical_signature(const SignedGraph& g) {
  const auto f = canonical_forest(g);
  SignedGraph::Builder b(g);
  for (const auto& e : g.edges()) b.set_sign(e.u, e.v, e.sign * f.label[e.u] * f.label[e.v]);
  return std::move(b).build();
}

/// Balanced iff every cycle has an even number of negative edges, i.e. iff
/// every non-tree edge agrees with the forest labels.
inline bool is_balanced(const SignedGraph& g) {
  const auto f = canonical_forest(g);
  for (const auto& e : g.edges())
    if (e.sign != f.label[e.u] * f.label[e.v]) return false;
  return true;
}

inline bool switching_equivalent(const SignedGraph& a, const SignedGraph& b) {
  if (!a.same_underlying(b)) throw DomainError("switching equivalence needs identical labelled underlying graphs");
  return canonical_signature(a) == canonical_signature(b);
}

/// Switching set U with switching(a, U) == b, if a and b are equivalent.
inline std::optional<VertexSet> switching_witness(const SignedGraph& a, const SignedGraph& b) {
  if (!switching_equivalent(a, b)) return std::nullopt;
  const auto fa = canonical_forest(a), fb = canonical_forest(b);
  VertexSet u(a.order());
  for (Vertex v = 0; v < a.order(); ++v)
    if (fa.label[v] != fb.label[v]) u.insert(v);
  return u;
}

}  // namespace sgx
