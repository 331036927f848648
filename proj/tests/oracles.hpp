#pragma once

// Brute-force reference implementations used as test oracles. Each one
// follows a definition directly and shares no code path with the library
// beyond SignedGraph storage and the eigensolver.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "sgx/sgx.hpp"

namespace oracle {

using sgx::Sign;
using sgx::SignedGraph;
using sgx::Vertex;

/// Switching at the vertex set encoded by `bits`, computed edge by edge.
inline SignedGraph switch_bits(const SignedGraph& g, std::uint64_t bits) {
  SignedGraph::Builder b(g.order());
  for (const auto& e : g.edges()) {
    const bool cut = ((bits >> e.u) & 1u) != ((bits >> e.v) & 1u);
    b.add_edge(e.u, e.v, cut ? sgx::flip(e.sign) : e.sign);
  }
  return std::move(b).build();
}

/// Balanced iff some switching makes every edge positive.
inline bool balanced(const SignedGraph& g) {
  const std::uint64_t total = std::uint64_t{1} << g.order();
  for (std::uint64_t u = 0; u < total; ++u)
    if (switch_bits(g, u).negative_edge_count() == 0) return true;
  return false;
}

/// Exists U with switch(a, U) == b.
inline bool switching_equivalent(const SignedGraph& a, const SignedGraph& b) {
  const std::uint64_t total = std::uint64_t{1} << a.order();
  for (std::uint64_t u = 0; u < total; ++u)
    if (switch_bits(a, u) == b) return true;
  return false;
}

/// Exists a permutation p and a switching taking a onto b.
inline bool switching_isomorphic(const SignedGraph& a, const SignedGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<Vertex> perm(a.order());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  do {
    const auto ra = sgx::relabel(a, perm);
    if (ra.same_underlying(b) && oracle::switching_equivalent(ra, b)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Every vertex subset of the given size (lexicographic) that is a clique.
inline std::vector<std::vector<Vertex>> cliques(const SignedGraph& g, std::size_t size) {
  std::vector<std::vector<Vertex>> out;
  const std::size_t n = g.order();
  std::vector<Vertex> pick;
  std::function<void(Vertex)> rec = [&](Vertex from) {
    if (pick.size() == size) {
      for (std::size_t i = 0; i < pick.size(); ++i)
        for (std::size_t j = i + 1; j < pick.size(); ++j)
          if (!g.has_edge(pick[i], pick[j])) return;
      out.push_back(pick);
      return;
    }
    for (Vertex v = from; v < n; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

inline SignedGraph induced(const SignedGraph& g, const std::vector<Vertex>& s) {
  return sgx::induced_subgraph(g, sgx::VertexSet::from(g.order(), s));
}

inline std::size_t unbalanced_cliques(const SignedGraph& g, std::size_t size) {
  std::size_t c = 0;
  for (const auto& s : cliques(g, size))
    if (!balanced(induced(g, s))) ++c;
  return c;
}

inline std::size_t balanced_clique_number(const SignedGraph& g) {
  std::size_t best = g.order() == 0 ? 0 : 1;
  for (std::size_t k = 2; k <= g.order(); ++k)
    for (const auto& s : cliques(g, k))
      if (balanced(induced(g, s))) best = std::max(best, k);
  return best;
}

/// Unbalanced k-cycle by scanning vertex sequences.
inline bool unbalanced_cycle(const SignedGraph& g, std::size_t k) {
  const std::size_t n = g.order();
  std::vector<Vertex> seq;
  std::vector<char> used(n, 0);
  std::function<bool()> rec = [&]() -> bool {
    if (seq.size() == k) {
      if (!g.has_edge(seq.back(), seq.front())) return false;
      int neg = 0;
      for (std::size_t i = 0; i < k; ++i) neg += g.sign(seq[i], seq[(i + 1) % k]) == Sign::negative;
      return neg % 2 == 1;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v] || (!seq.empty() && !g.has_edge(seq.back(), v))) continue;
      used[v] = 1;
      seq.push_back(v);
      const bool hit = rec();
      seq.pop_back();
      used[v] = 0;
      if (hit) return true;
    }
    return false;
  };
  return rec();
}

/// Calls visit on every labelled signed graph of order n (3^C(n,2) of them).
inline void for_each_signed_graph(std::size_t n, const std::function<void(const SignedGraph&)>& visit) {
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<int> digit(pairs, 0);
  for (;;) {
    SignedGraph::Builder b(n);
    std::size_t k = 0;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j, ++k)
        if (digit[k]) b.add_edge(i, j, digit[k] == 2 ? Sign::negative : Sign::positive);
    visit(std::move(b).build());
    std::size_t p = 0;
    while (p < pairs && ++digit[p] == 3) digit[p++] = 0;
    if (p == pairs) return;
  }
}

inline bool in_family(const SignedGraph& g, const sgx::Family& f) {
  switch (f.kind) {
    case sgx::Family::Kind::all_unbalanced: return true;
    case sgx::Family::Kind::tk4_free:
      return static_cast<int>(unbalanced_cliques(g, 4)) <= f.param - 1;
    case sgx::Family::Kind::kr_free:
      return static_cast<std::size_t>(f.param) > g.order() ||
             unbalanced_cliques(g, static_cast<std::size_t>(f.param)) == 0;
    case sgx::Family::Kind::c3_free: return !unbalanced_cycle(g, 3);
  }
  return false;
}

struct NaiveBest {
  double value = -1.0;
  std::vector<SignedGraph> maximizers;  // every labelled maximizer within 1e-9
};

/// Scans every labelled signed graph: unbalanced, in the family, optionally
/// connected; maximizes the objective. No switching reduction, no pruning.
inline NaiveBest naive_search(std::size_t n, sgx::Objective o, const sgx::Family& f, bool connected) {
  NaiveBest best;
  for_each_signed_graph(n, [&](const SignedGraph& g) {
    if (connected && !sgx::is_connected(g)) return;
    if (balanced(g) || !in_family(g, f)) return;
    const auto sp = sgx::spectrum(g);
    const double v = o == sgx::Objective::index ? sp.index() : sp.spectral_radius();
    if (v > best.value + 1e-9) {
      best.value = v;
      best.maximizers = {g};
    } else if (v >= best.value - 1e-9) {
      best.maximizers.push_back(g);
    }
  });
  return best;
}

}  // namespace oracle
