#pragma once

// Forbidden signed substructures: unbalanced cliques and cycles, the
// unbalanced-K₄ count behind tK₄⁻-freeness, and the balanced clique number.
//
// tK₄⁻-free is read operationally: the graph has fewer than t distinct
// vertex sets inducing an unbalanced complete K₄. A K₄ uses all six pairs
// of its vertex set, so subgraph and induced-subgraph readings agree here.

#include <cstdint>
#include <functional>
#include <vector>

#include "sgx/errors.hpp"
#include "sgx/signed_graph.hpp"

namespace sgx {

namespace detail {

// Extends `clique` (vertices ascending) by candidates > last, stopping at
// `size`. `visit` returns false to abort the enumeration.
inline bool extend_cliques(const SignedGraph& g, std::size_t size, std::vector<Vertex>& clique,
                           const VertexSet& candidates, const std::function<bool(const std::vector<Vertex>&)>& visit) {
  if (clique.size() == size) return visit(clique);
  if (clique.size() + candidates.count() < size) return true;
  for (Vertex v : candidates) {
    VertexSet next = candidates & g.neighbors(v);
    // keep only vertices after v to emit each set once, in lexicographic order
    for (Vertex u : candidates) {
      if (u > v) break;
      next.erase(u);
    }
    clique.push_back(v);
    const bool go_on = extend_cliques(g, size, clique, next, visit);
    clique.pop_back();
    if (!go_on) return false;
  }
  return true;
}

// Balanced iff every triangle through the first vertex is positive (valid
// for vertex sets inducing a complete graph).
inline bool complete_set_balanced(const SignedGraph& g, const std::vector<Vertex>& s) {
  if (s.size() < 3) return true;
  const Vertex a = s.front();
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.sign(a, s[i]) * g.sign(a, s[j]) * g.sign(s[i], s[j]) == Sign::negative) return false;
  return true;
}

}  // namespace detail

/// Visits every vertex set of the given size inducing a complete underlying
/// subgraph, in lexicographic order. Stops early if `visit` returns false.
inline void for_each_clique(const SignedGraph& g, std::size_t size,
                            const std::function<bool(const std::vector<Vertex>&)>& visit) {
  if (size == 0) return;
  std::vector<Vertex> clique;
  detail::extend_cliques(g, size, clique, VertexSet::full(g.order()), visit);
}

inline std::vector<VertexSet> enumerate_cliques(const SignedGraph& g, std::size_t size) {
  if (size < 1 || size > g.order()) throw DomainError("clique size must lie in [1, n]");
  std::vector<VertexSet> out;
  for_each_clique(g, size, [&](const std::vector<Vertex>& c) {
    out.push_back(VertexSet::from(g.order(), c));
    return true;
  });
  return out;
}

inline bool is_clique(const SignedGraph& g, const VertexSet& s) {
  const auto v = s.members();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (!g.has_edge(v[i], v[j])) return false;
  return true;
}

inline bool is_unbalanced_clique(const SignedGraph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw DomainError("vertex set universe does not match graph order");
  if (!is_clique(g, s)) throw DomainError("vertex set does not induce a complete subgraph");
  return !detail::complete_set_balanced(g, s.members());
}

/// Number of unbalanced complete signed subgraphs on `size` vertices.
inline std::size_t count_unbalanced_cliques(const SignedGraph& g, std::size_t size) {
  std::size_t count = 0;
  for_each_clique(g, size, [&](const std::vector<Vertex>& c) {
    if (!detail::complete_set_balanced(g, c)) ++count;
    return true;
  });
  return count;
}

inline std::size_t count_unbalanced_k4(const SignedGraph& g) { return count_unbalanced_cliques(g, 4); }

inline bool is_tk4_free(const SignedGraph& g, std::int64_t t) {
  if (t < 1) throw DomainError("tK4-free needs t >= 1");
  return static_cast<std::int64_t>(count_unbalanced_k4(g)) <= t - 1;
}

/// True iff some r-set induces an unbalanced complete signed graph (K_r⁻).
inline bool contains_unbalanced_kr(const SignedGraph& g, std::size_t r) {
  if (r < 3) throw DomainError("unbalanced K_r needs r >= 3");
  bool found = false;
  for_each_clique(g, r, [&](const std::vector<Vertex>& c) {
    found = !detail::complete_set_balanced(g, c);
    return !found;
  });
  return found;
}

/// True iff g has a k-cycle subgraph with an odd number of negative edges.
inline bool contains_unbalanced_ck(const SignedGraph& g, std::size_t k) {
  if (k < 3) throw DomainError("cycles need length >= 3");
  const std::size_t n = g.order();
  if (k > n) return false;
  if (k == 3) {
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b : g.neighbors(a)) {
        if (b <= a) continue;
        for (Vertex c : g.neighbors(b)) {
          if (c <= b || !g.has_edge(a, c)) continue;
          if (g.sign(a, b) * g.sign(b, c) * g.sign(a, c) == Sign::negative) return true;
        }
      }
    return false;
  }
  // Paths from the cycle's smallest vertex through larger vertices only.
  std::vector<char> on_path(n, 0);
  std::function<bool(Vertex, Vertex, std::size_t, Sign)> walk = [&](Vertex start, Vertex at, std::size_t len, Sign s) {
    if (len == k) return g.has_edge(at, start) && s * g.sign(at, start) == Sign::negative;
    for (Vertex nb : g.neighbors(at)) {
      if (nb <= start || on_path[nb]) continue;
      on_path[nb] = 1;
      const bool hit = walk(start, nb, len + 1, s * g.sign(at, nb));
      on_path[nb] = 0;
      if (hit) return true;
    }
    return false;
  };
  for (Vertex start = 0; start < n; ++start) {
    on_path[start] = 1;
    const bool hit = walk(start, start, 1, Sign::positive);
    on_path[start] = 0;
    if (hit) return true;
  }
  return false;
}

/// Number of negative triangles.
inline std::size_t count_negative_triangles(const SignedGraph& g) { return count_unbalanced_cliques(g, 3); }

/// ω_b: order of the largest vertex set inducing a balanced complete
/// subgraph. Branch and bound over cliques; a clique stays balanced when a
/// new vertex v agrees with the switching labels relative to the first
/// vertex a (label(b) = sign(a, b)).
inline std::size_t balanced_clique_number(const SignedGraph& g) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  std::size_t best = 1;
  std::vector<Vertex> clique;
  std::function<void(const VertexSet&)> grow = [&](const VertexSet& cand) {
    best = std::max(best, clique.size());
    if (clique.size() + cand.count() <= best) return;
    for (Vertex v : cand) {
      bool ok = true;
      if (clique.size() >= 2) {
        const Vertex a = clique.front();
        const Sign lv = g.sign(a, v);
        for (std::size_t i = 1; i < clique.size() && ok; ++i)
          ok = g.sign(clique[i], v) == g.sign(a, clique[i]) * lv;
      }
      if (!ok) continue;
      VertexSet next = cand & g.neighbors(v);
      for (Vertex u : cand) {
        if (u > v) break;
        next.erase(u);
      }
      clique.push_back(v);
      grow(next);
      clique.pop_back();
    }
  };
  grow(VertexSet::full(n));
  return best;
}

}  // namespace sgx
