#pragma once

// Dense symmetric eigensolver (cyclic Jacobi). Inputs here are small signed
// adjacency matrices, so a rotation sweep over the full matrix is cheap and
// needs no workspace beyond the matrix itself.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "sgx/errors.hpp"
#include "sgx/matrix.hpp"

namespace sgx {

inline constexpr double kDefaultEigenTol = 1e-10;
inline constexpr int kJacobiMaxSweeps = 60;

struct Spectrum {
  std::vector<double> eigenvalues;  // descending

  std::size_t size() const { return eigenvalues.size(); }
  double index() const { return eigenvalues.front(); }
  double smallest() const { return eigenvalues.back(); }
  double spectral_radius() const { return std::max(eigenvalues.front(), -eigenvalues.back()); }
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit length
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column j belongs to values[j]

  EigenPair pair(std::size_t j) const {
    EigenPair p{values[j], std::vector<double>(vectors.rows())};
    for (std::size_t i = 0; i < vectors.rows(); ++i) p.vector[i] = vectors(i, j);
    return p;
  }
};

namespace detail {

/// In-place cyclic Jacobi on the row-major symmetric n×n matrix `a`.
/// On return the diagonal holds the eigenvalues (unsorted). If `v` is
/// non-null it must hold the identity and receives eigenvectors as columns.
/// Returns false if the sweep limit was hit.
inline bool jacobi_inplace(double* a, std::size_t n, double tol, double* v = nullptr) {
  double frob = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) frob += a[i] * a[i];
  frob = std::sqrt(frob);
  if (frob == 0.0) return true;
  const double eps = std::numeric_limits<double>::epsilon();
  const double threshold = std::max(tol * 1e-2, 4 * eps) * frob;

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (std::sqrt(off) <= threshold) return true;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        if (std::abs(apq) <= eps * 1e-3 * (std::abs(app) + std::abs(aqq))) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = a[r * n + p], h = a[r * n + q];
          const double np = g - s * (h + g * tau);
          const double nq = h + s * (g - h * tau);
          a[r * n + p] = a[p * n + r] = np;
          a[r * n + q] = a[q * n + r] = nq;
        }
        if (v) {
          for (std::size_t r = 0; r < n; ++r) {
            const double g = v[r * n + p], h = v[r * n + q];
            v[r * n + p] = g - s * (h + g * tau);
            v[r * n + q] = h + s * (g - h * tau);
          }
        }
      }
    }
  }
  return false;
}

inline void require_symmetric(const DenseMatrix& m) {
  if (!m.square()) throw DomainError("eigensolver needs a square matrix");
  if (m.rows() == 0) throw DomainError("eigensolver needs order >= 1");
  const double scale = std::max(1.0, m.norm_inf());
  if (!m.is_symmetric(1e-12 * scale)) throw DomainError("eigensolver needs a symmetric matrix");
}

}  // namespace detail

/// Eigenvalues of a symmetric matrix, sorted descending.
inline Spectrum eigen_symmetric(const DenseMatrix& m, double tol = kDefaultEigenTol) {
  detail::require_symmetric(m);
  if (!(tol > 0.0)) throw DomainError("eigensolver tolerance must be positive");
  const std::size_t n = m.rows();
  std::vector<double> a = m.data();
  if (!detail::jacobi_inplace(a.data(), n, tol)) throw ConvergenceError("Jacobi iteration did not converge");
  Spectrum s;
  s.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.eigenvalues[i] = a[i * n + i];
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
  return s;
}

/// Full decomposition. Each eigenvector is normalised and signed so that its
/// first coordinate with magnitude above 1e-12 is positive.
inline EigenDecomposition eigen_decompose(const DenseMatrix& m, double tol = kDefaultEigenTol) {
  detail::require_symmetric(m);
  if (!(tol > 0.0)) throw DomainError("eigensolver tolerance must be positive");
  const std::size_t n = m.rows();
  std::vector<double> a = m.data();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  if (!detail::jacobi_inplace(a.data(), n, tol, v.data())) throw ConvergenceError("Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });

  EigenDecomposition out{std::vector<double>(n), DenseMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a[src * n + src];
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += v[i * n + src] * v[i * n + src];
    norm = std::sqrt(norm);
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v[i * n + src]) > 1e-12) {
        sign = v[i * n + src] > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v[i * n + src] / norm;
  }
  return out;
}

/// max_i |(A x - λ x)_i|
inline double eigen_residual(const DenseMatrix& m, const EigenPair& p) {
  const auto ax = m.multiply(p.vector);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - p.value * p.vector[i]));
  return r;
}

/// Rayleigh quotient xᵀAx / xᵀx.
inline double rayleigh(const DenseMatrix& m, const std::vector<double>& x) {
  double xx = 0.0;
  for (double xi : x) xx += xi * xi;
  if (!(xx > 0.0)) throw DomainError("Rayleigh quotient of the zero vector");
  const auto ax = m.multiply(x);
  double xax = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) xax += x[i] * ax[i];
  return xax / xx;
}

}  // namespace sgx
