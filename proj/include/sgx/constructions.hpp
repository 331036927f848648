#pragma once

// Extremal signed graphs and their closed-form polynomials.
//
// Γ_{s,n}: all-positive K_{n-1} on vertices 0..n-2 plus vertex n-1 joined to
//          0..s; the edge {0, n-1} is the only negative edge.
//
// Σ_{k,n} (with explicit r): vertices laid out block by block
//          u₂ = 0, u₁ = 1, w = [2, 2+r), q = [2+r, 2+r+k), v = [2+r+k, n).
//          u₁u₂ is the only negative edge. Adjacency follows the block matrix
//          below, so u₂ is joined to the w and q blocks but not to v:
//
//              u₂  u₁  w     q   v
//          u₂ [ 0  -1  j     j   0   ]
//          u₁ [-1   0  j     j   j   ]
//          w  [ j   j  J-I   0   J   ]
//          q  [ j   j  0     0   J   ]
//          v  [ 0   j  J     J   J-I ]

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "sgx/errors.hpp"
#include "sgx/partition.hpp"
#include "sgx/polynomial.hpp"
#include "sgx/signed_graph.hpp"
#include "sgx/spectra.hpp"

namespace sgx {

struct GammaParams {
  int s;
  int n;
};

struct SigmaParams {
  int k;
  int r;
  int n;
  int v_block() const { return n - 2 - r - k; }
};

inline void validate(const GammaParams& p) {
  if (p.s < 1) throw DomainError("gamma: s >= 1 violated (s = " + std::to_string(p.s) + ")");
  if (p.s > p.n - 2)
    throw DomainError("gamma: s <= n-2 violated (s = " + std::to_string(p.s) + ", n = " + std::to_string(p.n) + ")");
}

inline void validate(const SigmaParams& p) {
  if (p.k < 1) throw DomainError("sigma: k >= 1 violated");
  if (p.r < 2) throw DomainError("sigma: r >= 2 violated");
  if (p.v_block() < 2)
    throw DomainError("sigma: n >= k+r+4 violated (k = " + std::to_string(p.k) + ", r = " + std::to_string(p.r) +
                      ", n = " + std::to_string(p.n) + ")");
}

inline SignedGraph complete_positive(int n) {
  if (n < 1) throw DomainError("complete_positive: n >= 1 violated");
  SignedGraph::Builder b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  return std::move(b).build();
}

inline SignedGraph gamma(int s, int n) {
  validate(GammaParams{s, n});
  SignedGraph::Builder b(static_cast<std::size_t>(n));
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j) b.add_edge(i, j);
  const Vertex apex = static_cast<Vertex>(n - 1);
  b.add_edge(0, apex, Sign::negative);
  for (int i = 1; i <= s; ++i) b.add_edge(static_cast<Vertex>(i), apex);
  return std::move(b).build();
}

/// K_n with exactly one negative edge; identical to gamma(n-2, n).
inline SignedGraph complete_one_negative(int n) {
  if (n < 2) throw DomainError("complete_one_negative: n >= 2 violated");
  if (n == 2) return SignedGraph::from_edges(2, {{0, 1, Sign::negative}});
  return gamma(n - 2, n);
}

inline SignedGraph sigma(int k, int r, int n) {
  const SigmaParams p{k, r, n};
  validate(p);
  const Vertex u2 = 0, u1 = 1;
  const Vertex w0 = 2, q0 = w0 + static_cast<Vertex>(r), v0 = q0 + static_cast<Vertex>(k), end = static_cast<Vertex>(n);
  SignedGraph::Builder b(static_cast<std::size_t>(n));
  b.add_edge(u2, u1, Sign::negative);
  for (Vertex x = w0; x < v0; ++x) b.add_edge(u2, x);  // w and q
  for (Vertex x = w0; x < end; ++x) b.add_edge(u1, x);
  for (Vertex a = w0; a < q0; ++a)
    for (Vertex c = a + 1; c < q0; ++c) b.add_edge(a, c);  // K_r
  for (Vertex a = v0; a < end; ++a)
    for (Vertex c = a + 1; c < end; ++c) b.add_edge(a, c);  // K_{n-2-r-k}
  for (Vertex a = w0; a < v0; ++a)
    for (Vertex c = v0; c < end; ++c) b.add_edge(a, c);  // w-v and q-v joins
  return std::move(b).build();
}

/// The five blocks {u₂}, {u₁}, w, q, v of sigma(k, r, n).
inline EquitablePartition sigma_partition(int k, int r, int n) {
  const SigmaParams p{k, r, n};
  validate(p);
  return EquitablePartition::contiguous(
      {1, 1, static_cast<std::size_t>(r), static_cast<std::size_t>(k), static_cast<std::size_t>(p.v_block())});
}

/// λ³ − (n−3)λ² − (n+s−1)λ − s² + n + ns − 3
inline RealPolynomial f_poly(int s, int n) {
  validate(GammaParams{s, n});
  const double S = s, N = n;
  return RealPolynomial({-S * S + N + N * S - 3, -(N + S - 1), -(N - 3), 1.0});
}

/// Characteristic polynomial of the Σ quotient matrix, in closed form.
inline RealPolynomial h_poly(int k, int r, int n) {
  validate(SigmaParams{k, r, n});
  const double K = k, R = r, N = n;
  const double c0 = 2 * K * K * R - 2 * K * K - 2 * K * N * R + 2 * K * N + 2 * K * R * R - 2 * K;
  const double c1 = -2 * K * K + 2 * K * N - 3 * K * R - 3 * K + N * R + N - R * R - 3;
  const double c2 = -K * K * R + K * K + K * N * R - K * N - K * R * R + N * R - R * R - R - 2;
  const double c3 = K * K - K * N + K * R + 2 * K - 2 * N - R + 4;
  const double c4 = K - N + 4;
  return RealPolynomial({c0, c1, c2, c3, c4, 1.0});
}

inline QuotientMatrix q_sigma(int k, int r, int n) {
  const SigmaParams p{k, r, n};
  validate(p);
  const double K = k, R = r, V = p.v_block();
  QuotientMatrix q{DenseMatrix{{0, -1, R, K, 0},
                               {-1, 0, R, K, V},
                               {1, 1, R - 1, 0, V},
                               {1, 1, 0, 0, V},
                               {0, 1, R, K, V - 1}},
                   {1, 1, static_cast<std::size_t>(r), static_cast<std::size_t>(k), static_cast<std::size_t>(p.v_block())}};
  return q;
}

/// λ₁(Γ_{s,n}) as the largest root of f_{s,n} on [n−2−1e−6, n−1]. The
/// s = 1 boundary has no sign change there only if rounding hides it, in
/// which case the exact value n−2 is returned.
inline double lambda1_gamma(int s, int n) {
  const auto f = f_poly(s, n);
  try {
    return largest_real_root(f, n - 2 - 1e-6, n - 1);
  } catch (const DomainError&) {
    return static_cast<double>(n - 2);
  }
}

/// r with t = r(r−1)/2 + 1, when 8t−7 is a perfect square; otherwise none.
inline std::optional<int> r_of_t(std::int64_t t) {
  if (t < 2) throw DomainError("r_of_t: t >= 2 violated");
  const std::int64_t d = 8 * t - 7;
  auto q = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(d)));
  while (q * q > d) --q;
  while ((q + 1) * (q + 1) <= d) ++q;
  if (q * q != d) return std::nullopt;
  return static_cast<int>((1 + q) / 2);
}

inline std::int64_t t_of_r(int r) {
  if (r < 2) throw DomainError("t_of_r: r >= 2 violated");
  return static_cast<std::int64_t>(r) * (r - 1) / 2 + 1;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace sgx
