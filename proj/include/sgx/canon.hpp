#pragma once

// Canonical labelling of underlying graphs and canonical forms of signed
// graphs up to relabelling and switching.
//
// The canonical underlying form is the relabelling whose graph6 bit string
// (column order x(0,1) x(0,2) x(1,2) ...) is lexicographically largest among
// all vertex orders that list the refined colour classes in increasing
// colour order. Colours come from iterated degree refinement, so they are
// isomorphism invariants and restricting to colour-sorted orders is safe.
// Search is plain backtracking; fine for the small orders this library
// targets, exponential on highly symmetric large graphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sgx/errors.hpp"
#include "sgx/sg6.hpp"
#include "sgx/signed_graph.hpp"

namespace sgx {

inline constexpr std::size_t kMaxCanonOrder = 64;

using AdjacencyRows = std::vector<std::uint64_t>;  // bit u of rows[v] set iff u ~ v

inline AdjacencyRows adjacency_rows(const SignedGraph& g) {
  if (g.order() > kMaxCanonOrder)
    throw CapabilityError("canon_order", "canonical labelling supports order <= 64");
  AdjacencyRows rows(g.order(), 0);
  for (const auto& e : g.edges()) {
    rows[e.u] |= std::uint64_t{1} << e.v;
    rows[e.v] |= std::uint64_t{1} << e.u;
  }
  return rows;
}

namespace detail {

/// Stable colour refinement. Returns colour ranks (0 = smallest class).
inline std::vector<std::uint32_t> refine_colors(std::span<const std::uint64_t> rows) {
  const std::size_t n = rows.size();
  std::vector<std::uint32_t> color(n);
  for (std::size_t v = 0; v < n; ++v) color[v] = static_cast<std::uint32_t>(std::popcount(rows[v]));
  std::size_t classes = 0;
  {
    auto c = color;
    std::sort(c.begin(), c.end());
    classes = static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
    for (auto& x : color) x = static_cast<std::uint32_t>(std::lower_bound(c.begin(), c.begin() + classes, x) - c.begin());
  }
  for (;;) {
    std::vector<std::vector<std::uint32_t>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].push_back(color[v]);
      std::vector<std::uint32_t> nb;
      for (std::uint64_t w = rows[v]; w; w &= w - 1) nb.push_back(color[static_cast<std::size_t>(std::countr_zero(w))]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    auto uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t v = 0; v < n; ++v)
      color[v] = static_cast<std::uint32_t>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    if (uniq.size() == classes) break;
    classes = uniq.size();
  }
  return color;
}

struct OrderSearch {
  std::span<const std::uint64_t> rows;
  std::vector<std::uint32_t> color;
  std::vector<std::uint32_t> cell;  // colour required at each position
  std::vector<Vertex> perm;
  std::vector<std::uint64_t> cur, best;
  std::vector<char> used;
  bool have_best = false;
  bool collect = true;
  std::vector<std::vector<Vertex>> optimal;

  explicit OrderSearch(std::span<const std::uint64_t> r) : rows(r), color(refine_colors(r)) {
    const std::size_t n = rows.size();
    cell = color;
    std::sort(cell.begin(), cell.end());
    perm.assign(n, 0);
    cur.assign(n, 0);
    best.assign(n, 0);
    used.assign(n, 0);
  }

  // Column p of the relabelled graph: bit (63 - i) set iff perm[i] ~ v.
  std::uint64_t column(std::size_t p, Vertex v) const {
    std::uint64_t col = 0;
    for (std::size_t i = 0; i < p; ++i)
      if ((rows[perm[i]] >> v) & 1u) col |= std::uint64_t{1} << (63 - i);
    return col;
  }

  // -1, 0, +1 comparing cur[0..p] to best[0..p].
  int compare_prefix(std::size_t p) const {
    for (std::size_t i = 0; i <= p; ++i)
      if (cur[i] != best[i]) return cur[i] < best[i] ? -1 : 1;
    return 0;
  }

  void run(std::size_t p) {
    const std::size_t n = rows.size();
    if (p == n) {
      if (!have_best || compare_prefix(n - 1) > 0) {
        best = cur;
        have_best = true;
        optimal.clear();
      }
      if (collect || optimal.empty()) optimal.push_back(perm);
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v] || color[v] != cell[p]) continue;
      cur[p] = column(p, v);
      if (have_best && compare_prefix(p) < 0) continue;
      perm[p] = v;
      used[v] = 1;
      run(p + 1);
      used[v] = 0;
    }
  }
};

}  // namespace detail

struct CanonicalLabeling {
  /// perm[p] = original vertex placed at position p in the canonical form.
  std::vector<Vertex> perm;
  /// Every vertex order attaining the canonical form (a coset of the
  /// automorphism group); only filled when requested.
  std::vector<std::vector<Vertex>> optimal;
};

inline CanonicalLabeling canonical_labeling(std::span<const std::uint64_t> rows, bool all_optimal = false) {
  if (rows.size() > kMaxCanonOrder) throw CapabilityError("canon_order", "canonical labelling supports order <= 64");
  CanonicalLabeling out;
  if (rows.empty()) {
    out.optimal.emplace_back();
    return out;
  }
  detail::OrderSearch s(rows);
  s.collect = all_optimal;
  s.run(0);
  out.perm = s.optimal.front();
  out.optimal = std::move(s.optimal);
  return out;
}

/// True iff `rows` already is its own canonical form. Cheap rejection via the
/// colour order first, then backtracking that stops at the first order
/// producing a larger bit string.
inline bool is_canonical(std::span<const std::uint64_t> rows) {
  const std::size_t n = rows.size();
  if (n <= 1) return true;
  const auto color = detail::refine_colors(rows);
  for (std::size_t v = 1; v < n; ++v)
    if (color[v] < color[v - 1]) return false;

  std::vector<std::uint64_t> target(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < p; ++i)
      if ((rows[i] >> p) & 1u) target[p] |= std::uint64_t{1} << (63 - i);

  std::vector<Vertex> perm(n);
  std::vector<char> used(n, 0);
  // Returns true if some completion beats the identity string.
  auto dfs = [&](auto&& self, std::size_t p) -> bool {
    if (p == n) return false;
    for (Vertex v = 0; v < n; ++v) {
      if (used[v] || color[v] != color[p]) continue;
      std::uint64_t col = 0;
      for (std::size_t i = 0; i < p; ++i)
        if ((rows[perm[i]] >> v) & 1u) col |= std::uint64_t{1} << (63 - i);
      if (col > target[p]) return true;
      if (col < target[p]) continue;
      perm[p] = v;
      used[v] = 1;
      const bool beaten = self(self, p + 1);
      used[v] = 0;
      if (beaten) return true;
    }
    return false;
  };
  return !dfs(dfs, 0);
}

inline SignedGraph canonical_underlying(const SignedGraph& g) {
  const auto rows = adjacency_rows(g);
  const auto lab = canonical_labeling(rows);
  return relabel(g.underlying(), lab.perm);
}

namespace detail {

// Negative-edge bits of the canonical signature of `g` relabelled by `perm`,
// packed in lexicographic pair order (bit k of word k/64).
inline std::vector<std::uint64_t> relabelled_signature_bits(std::span<const std::uint64_t> adj,
                                                            std::span<const std::uint64_t> neg,
                                                            std::span<const Vertex> perm) {
  const std::size_t n = perm.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[perm[p]] = p;
  // BFS over new labels, smallest root first, neighbours ascending.
  std::vector<int> label(n, 0);
  std::vector<std::size_t> queue;
  queue.reserve(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (label[root] != 0) continue;
    label[root] = 1;
    queue.clear();
    queue.push_back(root);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t a = queue[h];
      const Vertex oa = perm[a];
      for (std::size_t b = 0; b < n; ++b) {
        const Vertex ob = perm[b];
        if (!((adj[oa] >> ob) & 1u) || label[b] != 0) continue;
        label[b] = label[a] * (((neg[oa] >> ob) & 1u) ? -1 : 1);
        queue.push_back(b);
      }
    }
  }
  std::vector<std::uint64_t> bits((pair_count(n) + 63) / 64, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vertex oi = perm[i], oj = perm[j];
      if (!((adj[oi] >> oj) & 1u)) continue;
      const int s = (((neg[oi] >> oj) & 1u) ? -1 : 1) * label[i] * label[j];
      if (s < 0) {
        const std::size_t k = lex_pair_index(n, i, j);
        bits[k >> 6] |= std::uint64_t{1} << (k & 63);
      }
    }
  return bits;
}

// Lexicographic comparison of bit strings in pair order (earlier pairs more significant).
inline bool bits_less(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] == b[w]) continue;
    const std::uint64_t diff = a[w] ^ b[w];
    const int k = std::countr_zero(diff);
    return ((b[w] >> k) & 1u) != 0;
  }
  return false;
}

}  // namespace detail

/// Representative of the class of `g` under relabelling and switching:
/// canonical underlying labelling, then the lexicographically smallest
/// canonical signature over all labellings attaining it.
inline SignedGraph switching_canonical_form(const SignedGraph& g) {
  const std::size_t n = g.order();
  const auto adj = adjacency_rows(g);
  std::vector<std::uint64_t> neg(n, 0);
  for (const auto& e : g.edges())
    if (e.sign == Sign::negative) {
      neg[e.u] |= std::uint64_t{1} << e.v;
      neg[e.v] |= std::uint64_t{1} << e.u;
    }
  const auto lab = canonical_labeling(adj, /*all_optimal=*/true);
  std::vector<std::uint64_t> best;
  const std::vector<Vertex>* best_perm = nullptr;
  for (const auto& perm : lab.optimal) {
    auto bits = detail::relabelled_signature_bits(adj, neg, perm);
    if (!best_perm || detail::bits_less(bits, best)) {
      best = std::move(bits);
      best_perm = &perm;
    }
  }
  SignedGraph::Builder b(n);
  if (best_perm) {
    const auto& perm = *best_perm;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if ((adj[perm[i]] >> perm[j]) & 1u) {
          const std::size_t k = lex_pair_index(n, i, j);
          b.add_edge(i, j, ((best[k >> 6] >> (k & 63)) & 1u) ? Sign::negative : Sign::positive);
        }
  }
  return std::move(b).build();
}

inline std::string switching_canonical_sg6(const SignedGraph& g) { return encode_sg6(switching_canonical_form(g)); }

/// True iff some vertex bijection maps g1's underlying graph onto g2's and
/// carries g1's signature to one switching equivalent to g2's.
inline bool switching_isomorphic(const SignedGraph& g1, const SignedGraph& g2) {
  if (g1.order() != g2.order()) throw DomainError("switching isomorphism needs equal orders");
  if (g1.size() != g2.size()) return false;
  return switching_canonical_form(g1) == switching_canonical_form(g2);
}

}  // namespace sgx
