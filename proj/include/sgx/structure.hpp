#pragma once

// Structure report for a tK₄⁻-free index maximizer: the features the
// extremal argument pins down, checked on a concrete witness.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgx/canon.hpp"
#include "sgx/constructions.hpp"
#include "sgx/spectra.hpp"

namespace sgx {

struct StructureReport {
  bool unbalanced = false;
  bool connected = false;
  std::size_t negative_edges = 0;  // after switching to a nonnegative leading eigenvector
  std::optional<std::pair<Vertex, Vertex>> negative_edge;
  std::optional<int> r;                         // r_of_t(t) when integral
  std::optional<std::size_t> common_neighbors;  // of the negative edge's endpoints
  std::optional<bool> common_matches_r;
  std::optional<bool> isomorphic_to_gamma;  // switching isomorphic to gamma(r, n)
  std::vector<std::string> notes;

  bool all_checks_pass() const {
    return unbalanced && connected && negative_edges == 1 && common_matches_r.value_or(false) &&
           isomorphic_to_gamma.value_or(false);
  }
};

inline StructureReport verify_extremal_structure(const SignedGraph& g, std::int64_t t) {
  StructureReport rep;
  rep.unbalanced = !is_balanced(g);
  if (!rep.unbalanced) {
    rep.notes.push_back("not unbalanced");
    return rep;
  }
  rep.connected = is_connected(g);
  const auto sw = nonneg_switching(g);
  const SignedGraph& h = sw.graph;
  rep.negative_edges = h.negative_edge_count();
  for (const auto& e : h.edges())
    if (e.sign == Sign::negative) {
      rep.negative_edge = std::make_pair(e.u, e.v);
      break;
    }
  if (t >= 2) rep.r = r_of_t(t);
  if (!rep.r) {
    rep.notes.push_back("r not integral, structure check skipped");
    return rep;
  }
  if (rep.negative_edges == 1) {
    const auto [a, b] = *rep.negative_edge;
    rep.common_neighbors = (h.neighbors(a) & h.neighbors(b)).count();
    rep.common_matches_r = *rep.common_neighbors == static_cast<std::size_t>(*rep.r);
  } else {
    rep.notes.push_back("common neighbourhood check needs exactly one negative edge");
  }
  const int n = static_cast<int>(g.order());
  if (*rep.r <= n - 2) {
    rep.isomorphic_to_gamma = switching_isomorphic(g, gamma(*rep.r, n));
  } else {
    rep.notes.push_back("gamma(r, n) undefined for r > n-2");
  }
  return rep;
}

}  // namespace sgx
