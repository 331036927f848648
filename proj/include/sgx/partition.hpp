#pragma once

#include <cmath>
#include <vector>

#include "sgx/eigen.hpp"
#include "sgx/errors.hpp"
#include "sgx/matrix.hpp"
#include "sgx/vertex_set.hpp"

namespace sgx {

/// Ordered vertex partition X₁ ∪ … ∪ X_k of [0, n).
class EquitablePartition {
 public:
  EquitablePartition() = default;
  explicit EquitablePartition(std::vector<VertexSet> blocks) : blocks_(std::move(blocks)) { validate(); }

  /// Blocks given as contiguous sizes: [0, s₀), [s₀, s₀+s₁), ...
  static EquitablePartition contiguous(const std::vector<std::size_t>& sizes) {
    std::size_t n = 0;
    for (auto s : sizes) n += s;
    std::vector<VertexSet> blocks;
    std::size_t at = 0;
    for (auto s : sizes) {
      VertexSet b(n);
      for (std::size_t i = 0; i < s; ++i) b.insert(at + i);
      at += s;
      blocks.push_back(std::move(b));
    }
    return EquitablePartition(std::move(blocks));
  }

  static EquitablePartition singletons(std::size_t n) { return contiguous(std::vector<std::size_t>(n, 1)); }

  const std::vector<VertexSet>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  std::size_t universe() const { return blocks_.empty() ? 0 : blocks_.front().universe(); }
  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& b : blocks_) s.push_back(b.count());
    return s;
  }

 private:
  void validate() const {
    if (blocks_.empty()) throw DomainError("partition needs at least one block");
    const std::size_t n = blocks_.front().universe();
    VertexSet seen(n);
    for (const auto& b : blocks_) {
      if (b.universe() != n) throw DomainError("partition blocks over different universes");
      if (b.empty()) throw DomainError("partition block is empty");
      if (!(seen & b).empty()) throw DomainError("partition blocks overlap");
      seen |= b;
    }
    if (seen.count() != n) throw DomainError("partition blocks do not cover all vertices");
  }

  std::vector<VertexSet> blocks_;
};

/// Q = (b_ij) with b_ij the common row sum of block M_ij, plus the block
/// sizes needed to symmetrise it.
struct QuotientMatrix {
  DenseMatrix entries;
  std::vector<std::size_t> block_sizes;

  std::size_t size() const { return entries.rows(); }

  /// D^{1/2} Q D^{-1/2} with D = diag(block sizes). Symmetric whenever the
  /// partitioned matrix is, and similar to Q.
  DenseMatrix symmetrized() const {
    const std::size_t k = size();
    DenseMatrix s(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        s(i, j) = entries(i, j) * std::sqrt(static_cast<double>(block_sizes[i]) / static_cast<double>(block_sizes[j]));
    return s;
  }

  Spectrum eigenvalues(double tol = kDefaultEigenTol) const { return eigen_symmetric(symmetrized(), tol); }
};

namespace detail {
inline void require_partition_of(const DenseMatrix& m, const EquitablePartition& p) {
  if (!m.square()) throw DomainError("equitable partition needs a square matrix");
  if (p.universe() != m.rows()) throw DomainError("partition does not match the matrix order");
}
}  // namespace detail

/// Exact check: within every block pair, all row sums coincide.
inline bool is_equitable(const DenseMatrix& m, const EquitablePartition& p) {
  detail::require_partition_of(m, p);
  for (const auto& xi : p.blocks()) {
    for (const auto& xj : p.blocks()) {
      bool first = true;
      double want = 0.0;
      for (Vertex r : xi) {
        double s = 0.0;
        for (Vertex c : xj) s += m(r, c);
        if (first) {
          want = s;
          first = false;
        } else if (s != want) {
          return false;
        }
      }
    }
  }
  return true;
}

inline QuotientMatrix quotient(const DenseMatrix& m, const EquitablePartition& p) {
  if (!is_equitable(m, p)) throw DomainError("partition is not equitable");
  const std::size_t k = p.size();
  QuotientMatrix q{DenseMatrix(k), p.block_sizes()};
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex r = *p.blocks()[i].begin();
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (Vertex c : p.blocks()[j]) s += m(r, c);
      q.entries(i, j) = s;
    }
  }
  return q;
}

}  // namespace sgx
