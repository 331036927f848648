#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "sgx/errors.hpp"
#include "sgx/matrix.hpp"

namespace sgx {

/// Real polynomial, coefficients from the constant term upward. Trailing
/// zero coefficients are trimmed so the leading coefficient is nonzero
/// (the zero polynomial has no coefficients).
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
  RealPolynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

  static RealPolynomial from_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
    return RealPolynomial(std::move(c));
  }

  const std::vector<double>& coefficients() const { return c_; }
  double coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  RealPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return RealPolynomial(std::move(d));
  }

  /// ‖coefficients‖∞
  double scale() const {
    double s = 0.0;
    for (double x : c_) s = std::max(s, std::abs(x));
    return s;
  }

  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
    return RealPolynomial(std::move(c));
  }

  friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

  std::string to_string(const char* var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const double a = c_[static_cast<std::size_t>(k)];
      if (a == 0.0) continue;
      const double mag = std::abs(a);
      os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      if (mag != 1.0 || k == 0) os << mag;
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

inline constexpr std::size_t kMaxCharPolyOrder = 12;

/// det(xI - M) by the Faddeev–LeVerrier trace recursion. Integer input gives
/// integer coefficients, which are rounded to remove accumulated error.
inline RealPolynomial char_poly(const DenseMatrix& m) {
  if (!m.square()) throw DomainError("characteristic polynomial needs a square matrix");
  const std::size_t n = m.rows();
  if (n > kMaxCharPolyOrder)
    throw CapabilityError("char_poly_order", "characteristic polynomial supports order <= 12, got " + std::to_string(n));
  std::vector<long double> c(n + 1, 0.0L);
  c[n] = 1.0L;
  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
  std::vector<long double> a(n * n), mk(n * n, 0.0L), tmp(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i];
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long double s = 0.0L;
        for (std::size_t l = 0; l < n; ++l) s += a[i * n + l] * mk[l * n + j];
        tmp[i * n + j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) tmp[i * n + i] += c[n - k + 1];
    mk.swap(tmp);
    long double tr = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i * n + l] * mk[l * n + i];
    c[n - k] = -tr / static_cast<long double>(k);
  }
  const bool integral = m.is_integral();
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = static_cast<double>(integral ? std::round(c[i]) : c[i]);
  return RealPolynomial(std::move(out));
}

namespace detail {

inline double bisect_root(const RealPolynomial& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // Newton polish, kept only if it stays in the bracket and improves |p|.
  const auto dp = p.derivative();
  for (int it = 0; it < 3; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double nx = x - p(x) / d;
    if (!(nx >= lo && nx <= hi) || std::abs(p(nx)) >= std::abs(p(x))) break;
    x = nx;
  }
  return x;
}

}  // namespace detail

/// Largest root of p in [lo, hi]: scan downward from hi for the first sign
/// change, then bisect and polish with Newton. Throws DomainError when no
/// sign change (or exact zero) is found on the scan grid.
inline double largest_real_root(const RealPolynomial& p, double lo, double hi, int scan_steps = 4096) {
  if (!(lo < hi)) throw DomainError("largest_real_root needs lo < hi");
  if (p.is_zero()) throw DomainError("largest_real_root of the zero polynomial");
  double right = hi;
  double fr = p(right);
  if (fr == 0.0) return hi;
  for (int k = scan_steps - 1; k >= 0; --k) {
    const double left = lo + (hi - lo) * static_cast<double>(k) / scan_steps;
    const double fl = p(left);
    if (fl == 0.0) return left;
    if ((fl < 0) != (fr < 0)) return detail::bisect_root(p, left, right);
    right = left;
    fr = fl;
  }
  throw DomainError("no sign change of " + p.to_string() + " found in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
}

/// All sign-changing roots in [lo, hi] on the scan grid, descending.
/// Roots of even multiplicity are not detected.
inline std::vector<double> real_roots(const RealPolynomial& p, double lo, double hi, int scan_steps = 20000) {
  std::vector<double> out;
  double right = hi;
  double fr = p(right);
  if (fr == 0.0) out.push_back(hi);
  for (int k = scan_steps - 1; k >= 0; --k) {
    const double left = lo + (hi - lo) * static_cast<double>(k) / scan_steps;
    const double fl = p(left);
    if (fl == 0.0) {
      out.push_back(left);
    } else if (fr != 0.0 && (fl < 0) != (fr < 0)) {
      out.push_back(detail::bisect_root(p, left, right));
    }
    right = left;
    fr = fl;
  }
  return out;
}

/// Cauchy bound: every root satisfies |x| <= cauchy_bound(p).
inline double cauchy_bound(const RealPolynomial& p) {
  if (p.degree() < 1) return 0.0;
  const double lead = std::abs(p.coefficients().back());
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coefficient(static_cast<std::size_t>(k))) / lead);
  return 1.0 + m;
}

}  // namespace sgx
