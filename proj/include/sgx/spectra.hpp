#pragma once

#include <cmath>
#include <vector>

#include "sgx/eigen.hpp"
#include "sgx/matrix.hpp"
#include "sgx/signed_graph.hpp"

namespace sgx {

namespace detail {
inline void require_nonempty(const SignedGraph& g) {
  if (g.order() == 0) throw DomainError("spectral operations need a graph of order >= 1");
}
}  // namespace detail

inline Spectrum spectrum(const SignedGraph& g, double tol = kDefaultEigenTol) {
  detail::require_nonempty(g);
  return eigen_symmetric(adjacency_matrix(g), tol);
}

/// λ₁, the largest adjacency eigenvalue.
inline double index(const SignedGraph& g) { return spectrum(g).index(); }

/// ρ = max(λ₁, -λₙ).
inline double spectral_radius(const SignedGraph& g) { return spectrum(g).spectral_radius(); }

inline EigenPair leading_eigenpair(const SignedGraph& g, double tol = kDefaultEigenTol) {
  detail::require_nonempty(g);
  return eigen_decompose(adjacency_matrix(g), tol).pair(0);
}

struct NonnegSwitching {
  VertexSet switched;  // U with graph == switching(original, U)
  SignedGraph graph;
  EigenPair pair;      // leading eigenpair of `graph`, coordinates >= 0
};

/// Switches at the negative coordinates of a leading eigenvector x. The
/// switched graph has |x| as a leading eigenvector: with D = diag(sign x),
/// D A D |x| = D A x = λ D x = λ |x|.
inline NonnegSwitching nonneg_switching(const SignedGraph& g, double tol = kDefaultEigenTol) {
  auto pair = leading_eigenpair(g, tol);
  VertexSet u(g.order());
  for (Vertex i = 0; i < g.order(); ++i)
    if (pair.vector[i] < 0.0) u.insert(i);
  for (double& xi : pair.vector) xi = std::abs(xi);
  return {u, switching(g, u), std::move(pair)};
}

}  // namespace sgx
