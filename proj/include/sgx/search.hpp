#pragma once

// Extremal search over unbalanced signed graphs of small order.
//
// Underlying graphs on n <= 8 vertices are uint64 masks over the
// lexicographic vertex pairs and are scanned in increasing mask order, split
// into contiguous ranges that workers claim from a shared counter. For each
// surviving underlying graph the switching classes are enumerated with the
// canonical BFS spanning forest held positive, so a class is a choice of
// signs on the co-tree edges. Family constraints are checked as soon as all
// edges of a forbidden clique carry a sign.
//
// Pruning uses λ₁ of the all-positive signature as an upper bound for both
// objectives (Perron-Frobenius: |A_σ| = A). An underlying graph is skipped
// only when this bound is below the shared best by more than the tie
// tolerance, so every graph that can reach the final optimum is always
// processed, whatever the thread timing.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sgx/canon.hpp"
#include "sgx/certificate.hpp"
#include "sgx/checkpoint.hpp"
#include "sgx/eigen.hpp"
#include "sgx/errors.hpp"
#include "sgx/search_spec.hpp"
#include "sgx/sg6.hpp"
#include "sgx/signed_graph.hpp"

namespace sgx {

/// Calls `visit` once per switching class of signatures on g's underlying
/// graph: the canonical spanning forest of the underlying graph is positive
/// and the co-forest edges (lexicographic order) take every sign pattern,
/// bit d of the pattern counter giving the sign of co-forest edge d.
inline void for_each_switching_class(const SignedGraph& g, const std::function<void(const SignedGraph&)>& visit) {
  const SignedGraph base = g.underlying();
  const auto forest = canonical_forest(base);
  std::vector<SignedEdge> cotree;
  for (const auto& e : base.edges())
    if (!forest.is_tree_edge(e.u, e.v)) cotree.push_back(e);
  if (cotree.size() > 30)
    throw CapabilityError("switching_classes", "more than 2^30 switching classes (" + std::to_string(cotree.size()) +
                                                   " independent cycles)");
  const std::uint64_t total = std::uint64_t{1} << cotree.size();
  for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
    SignedGraph::Builder b(base);
    for (std::size_t d = 0; d < cotree.size(); ++d)
      if ((pattern >> d) & 1u) b.set_sign(cotree[d].u, cotree[d].v, Sign::negative);
    visit(std::move(b).build());
  }
}

inline std::vector<SignedGraph> enumerate_switching_classes(const SignedGraph& g) {
  std::vector<SignedGraph> out;
  for_each_switching_class(g, [&](const SignedGraph& s) { out.push_back(s); });
  return out;
}

/// λ₁ of the all-positive signature; bounds λ₁ and ρ of every signature.
inline double underlying_upper_bound(const SignedGraph& g) {
  if (g.order() == 0) return 0.0;
  return index(g.underlying());
}

namespace detail {

inline SignedGraph graph_from_masks(std::size_t n, std::uint64_t mask, std::uint64_t neg) {
  SignedGraph::Builder b(n);
  std::size_t k = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++k)
      if ((mask >> k) & 1u) b.add_edge(i, j, ((neg >> k) & 1u) ? Sign::negative : Sign::positive);
  return std::move(b).build();
}

inline void atomic_raise(std::atomic<double>& cell, double v) {
  double cur = cell.load(std::memory_order_relaxed);
  while (v > cur && !cell.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

/// Best candidates of one range (or of a fold of ranges).
struct RangeBest {
  bool found = false;
  double value = -std::numeric_limits<double>::infinity();
  std::string key;             // smallest canonical sg6 among ties
  std::set<std::string> ties;  // canonical sg6 of every class within kTieTol of value

  /// Folds a candidate; `key_of` is only called when the candidate can
  /// matter, since canonical forms are the expensive part.
  template <class KeyFn>
  void offer(double v, KeyFn&& key_of) {
    if (found && v < value - kTieTol) return;
    std::string k = key_of();
    if (!found || v > value + kTieTol) {
      found = true;
      value = v;
      key = k;
      ties.clear();
      ties.insert(std::move(k));
      return;
    }
    value = std::max(value, v);
    if (k < key) key = k;
    ties.insert(std::move(k));
  }

  void merge(const RangeBest& o) {
    if (!o.found) return;
    if (!found || o.value > value + kTieTol) {
      *this = o;
      return;
    }
    if (o.value < value - kTieTol) return;
    value = std::max(value, o.value);
    if (o.key < key) key = o.key;
    ties.insert(o.ties.begin(), o.ties.end());
  }
};

struct GraphStat {
  double bound;           // +inf when not pruning
  std::uint64_t classes;  // switching classes evaluated (unbalanced, in the family)
};

struct RangeOutcome {
  RangeBest best;
  std::vector<GraphStat> stats;
};

class SearchKernel {
 public:
  explicit SearchKernel(const SearchSpec& spec) : spec_(spec), n_(static_cast<std::size_t>(spec.n)) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j, ++k) {
        pi_[k] = static_cast<std::uint8_t>(i);
        pj_[k] = static_cast<std::uint8_t>(j);
        idx_[i][j] = idx_[j][i] = static_cast<std::uint8_t>(k);
      }
    pairs_ = k;
    for (std::size_t m = 0; m <= pairs_; ++m) stanley_[m] = (std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 2.0;
    switch (spec.family.kind) {
      case Family::Kind::all_unbalanced: clique_size_ = 0; break;
      case Family::Kind::tk4_free:
        clique_size_ = 4;
        limit_ = spec.family.param - 1;
        break;
      case Family::Kind::kr_free:
        clique_size_ = static_cast<std::size_t>(spec.family.param);
        limit_ = 0;
        break;
      case Family::Kind::c3_free:
        clique_size_ = 3;
        limit_ = 0;
        break;
    }
    if (clique_size_ > n_) clique_size_ = 0;
  }

  std::size_t pairs() const { return pairs_; }

  /// Processes masks [lo, hi). `cutoff` is the shared best used for pruning.
  void run(std::uint64_t lo, std::uint64_t hi, std::atomic<double>& cutoff, RangeOutcome& out) {
    for (std::uint64_t mask = lo; mask < hi; ++mask) process(mask, cutoff, out);
  }

 private:
  void process(std::uint64_t mask, std::atomic<double>& cutoff, RangeOutcome& out) {
    const std::size_t m = static_cast<std::size_t>(std::popcount(mask));
    if (spec_.prune && stanley_[m] < cutoff.load(std::memory_order_relaxed) - kTieTol) return;

    rows_.fill(0);
    for (std::uint64_t w = mask; w; w &= w - 1) {
      const auto k = static_cast<std::size_t>(std::countr_zero(w));
      rows_[pi_[k]] |= std::uint64_t{1} << pj_[k];
      rows_[pj_[k]] |= std::uint64_t{1} << pi_[k];
    }

    // Canonical BFS forest: smallest root first, neighbours ascending.
    std::uint64_t tree = 0, seen = 0;
    std::size_t components = 0;
    std::array<std::uint8_t, 8> queue{};
    for (std::size_t root = 0; root < n_; ++root) {
      if ((seen >> root) & 1u) continue;
      ++components;
      seen |= std::uint64_t{1} << root;
      std::size_t head = 0, tail = 0;
      queue[tail++] = static_cast<std::uint8_t>(root);
      while (head < tail) {
        const std::size_t a = queue[head++];
        for (std::uint64_t nb = rows_[a] & ~seen; nb; nb &= nb - 1) {
          const auto b = static_cast<std::size_t>(std::countr_zero(nb));
          seen |= std::uint64_t{1} << b;
          tree |= std::uint64_t{1} << idx_[a][b];
          queue[tail++] = static_cast<std::uint8_t>(b);
        }
      }
    }
    if (spec_.connected_only && components > 1) return;
    const std::uint64_t cotree_mask = mask & ~tree;
    if (cotree_mask == 0) return;  // a forest has only the balanced class

    double bound = std::numeric_limits<double>::infinity();
    if (spec_.prune) {
      bound = positive_index();
      if (bound < cutoff.load(std::memory_order_relaxed) - kTieTol) return;
    }
    if (spec_.dedup && !is_canonical(std::span<const std::uint64_t>(rows_.data(), n_))) return;

    cotree_.clear();
    std::array<int, 28> pos{};
    pos.fill(-1);
    for (std::uint64_t w = cotree_mask; w; w &= w - 1) {
      const auto k = static_cast<std::size_t>(std::countr_zero(w));
      pos[k] = static_cast<int>(cotree_.size());
      cotree_.push_back(static_cast<std::uint8_t>(k));
    }
    build_constraints(pos);

    mask_ = mask;
    classes_ = 0;
    out_ = &out;
    cutoff_ = &cutoff;
    descend(0, 0, 0);
    out.stats.push_back({bound, classes_});
  }

  double positive_index() {
    std::array<double, 64> a{};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] = ((rows_[i] >> j) & 1u) ? 1.0 : 0.0;
    jacobi_inplace(a.data(), n_, kDefaultEigenTol);
    double top = a[0];
    for (std::size_t i = 1; i < n_; ++i) top = std::max(top, a[i * n_ + i]);
    return top;
  }

  // Cliques of the forbidden size, each as its triangles through the first
  // vertex (a complete signed graph is balanced iff all those are positive),
  // grouped by the co-tree position at which the clique becomes fully signed.
  void build_constraints(const std::array<int, 28>& pos) {
    const std::size_t depth_count = cotree_.size();
    by_depth_.assign(depth_count, {});
    if (clique_size_ == 0) return;
    std::array<std::uint8_t, 8> c{};
    auto emit = [&](std::size_t size) {
      int depth = -1;
      for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = x + 1; y < size; ++y) depth = std::max(depth, pos[idx_[c[x]][c[y]]]);
      if (depth < 0) return;  // all tree edges, hence positive and balanced
      Constraint con;
      for (std::size_t x = 1; x < size; ++x)
        for (std::size_t y = x + 1; y < size; ++y)
          con.triangles.push_back((std::uint64_t{1} << idx_[c[0]][c[x]]) | (std::uint64_t{1} << idx_[c[0]][c[y]]) |
                                  (std::uint64_t{1} << idx_[c[x]][c[y]]));
      by_depth_[static_cast<std::size_t>(depth)].push_back(std::move(con));
    };
    auto grow = [&](auto&& self, std::size_t size, std::uint64_t cand) -> void {
      if (size == clique_size_) {
        emit(size);
        return;
      }
      if (static_cast<std::size_t>(std::popcount(cand)) + size < clique_size_) return;
      for (std::uint64_t w = cand; w; w &= w - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(w));
        c[size] = static_cast<std::uint8_t>(v);
        const std::uint64_t later = ~((std::uint64_t{2} << v) - 1);
        self(self, size + 1, cand & rows_[v] & later);
      }
    };
    grow(grow, 0, (std::uint64_t{1} << n_) - 1);
  }

  void descend(std::size_t d, std::uint64_t neg, int unbalanced) {
    if (d == cotree_.size()) {
      if (neg != 0) evaluate(neg);
      return;
    }
    for (int choice = 0; choice < 2; ++choice) {
      const std::uint64_t next = choice ? neg | (std::uint64_t{1} << cotree_[d]) : neg;
      int count = unbalanced;
      bool ok = true;
      for (const auto& con : by_depth_[d]) {
        for (std::uint64_t tri : con.triangles)
          if (std::popcount(next & tri) & 1) {
            ++count;
            break;
          }
        if (count > limit_) {
          ok = false;
          break;
        }
      }
      if (ok) descend(d + 1, next, count);
    }
  }

  void evaluate(std::uint64_t neg) {
    ++classes_;
    std::array<double, 64> a{};
    for (std::size_t k = 0; k < pairs_; ++k) {
      if (!((mask_ >> k) & 1u)) continue;
      const double s = ((neg >> k) & 1u) ? -1.0 : 1.0;
      a[pi_[k] * n_ + pj_[k]] = a[pj_[k] * n_ + pi_[k]] = s;
    }
    if (!jacobi_inplace(a.data(), n_, kDefaultEigenTol)) throw ConvergenceError("Jacobi iteration did not converge");
    double hi = a[0], lo = a[0];
    for (std::size_t i = 1; i < n_; ++i) {
      hi = std::max(hi, a[i * n_ + i]);
      lo = std::min(lo, a[i * n_ + i]);
    }
    const double v = spec_.objective == Objective::index ? hi : std::max(hi, -lo);
    const std::uint64_t mask = mask_;
    out_->best.offer(v, [&] { return switching_canonical_sg6(graph_from_masks(n_, mask, neg)); });
    if (spec_.prune) atomic_raise(*cutoff_, v);
  }

  struct Constraint {
    std::vector<std::uint64_t> triangles;
  };

  SearchSpec spec_;
  std::size_t n_;
  std::size_t pairs_ = 0;
  std::array<std::uint8_t, 28> pi_{}, pj_{};
  std::array<std::array<std::uint8_t, 8>, 8> idx_{};
  std::array<double, 29> stanley_{};
  std::size_t clique_size_ = 0;
  int limit_ = 0;

  std::array<std::uint64_t, 8> rows_{};
  std::vector<std::uint8_t> cotree_;
  std::vector<std::vector<Constraint>> by_depth_;
  std::uint64_t mask_ = 0;
  std::uint64_t classes_ = 0;
  RangeOutcome* out_ = nullptr;
  std::atomic<double>* cutoff_ = nullptr;
};

}  // namespace detail

/// Number of contiguous mask ranges the search space is cut into. Fixed
/// per order so journals and results do not depend on the worker count.
inline std::uint64_t search_range_width(int n) {
  const std::size_t pairs = pair_count(static_cast<std::size_t>(n));
  const std::uint64_t total = std::uint64_t{1} << pairs;
  return std::max<std::uint64_t>(1, total >> 10);
}

/// Runs the search described by `spec` and returns its certificate.
///
/// Statistics count the underlying graphs (and their classes) whose bound
/// reaches the final best value within the tie tolerance; unpruned runs
/// count every processed graph. Ranges restored from a checkpoint journal
/// contribute their best candidate but no statistics.
inline SearchCertificate extremal_search(const SearchSpec& spec) {
  validate(spec);
  const auto started = std::chrono::steady_clock::now();
  const int n = spec.n;
  const std::uint64_t total = std::uint64_t{1} << pair_count(static_cast<std::size_t>(n));
  const std::uint64_t width = search_range_width(n);
  const std::size_t ranges = static_cast<std::size_t>((total + width - 1) / width);
  const std::string checksum = spec_checksum(spec);

  std::atomic<double> cutoff(-std::numeric_limits<double>::infinity());
  if (spec.prune)
    if (const auto seed = seed_graph(spec)) cutoff.store(objective_value(*seed, spec.objective) - kSeedMargin);

  std::vector<detail::RangeOutcome> outcomes(ranges);
  std::vector<char> done(ranges, 0);
  std::uint64_t resumed = 0;
  std::unique_ptr<JournalWriter> journal;
  if (spec.checkpoint_path) {
    for (const auto& rec : read_journal(*spec.checkpoint_path)) {
      if (rec.checksum != checksum)
        throw DomainError("checkpoint journal '" + *spec.checkpoint_path + "' belongs to a different search spec");
      if (rec.range_start % width != 0 || rec.range_end != std::min(total, rec.range_start + width))
        throw DomainError("checkpoint journal range [" + std::to_string(rec.range_start) + ", " +
                          std::to_string(rec.range_end) + ") does not match this search's partition");
      const std::size_t r = static_cast<std::size_t>(rec.range_start / width);
      if (done[r]) continue;
      done[r] = 1;
      ++resumed;
      if (rec.best_value) {
        auto& b = outcomes[r].best;
        b.found = true;
        b.value = *rec.best_value;
        b.key = rec.witness;
        b.ties = {rec.witness};
        if (spec.prune) detail::atomic_raise(cutoff, b.value);
      }
    }
    journal = std::make_unique<JournalWriter>(*spec.checkpoint_path);
  }

  std::atomic<std::size_t> next(0);
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      detail::SearchKernel kernel(spec);
      for (;;) {
        const std::size_t r = next.fetch_add(1);
        if (r >= ranges) break;
        if (done[r]) continue;
        const std::uint64_t lo = r * width, hi = std::min(total, lo + width);
        kernel.run(lo, hi, cutoff, outcomes[r]);
        if (journal) {
          const auto& b = outcomes[r].best;
          journal->append({lo, hi, b.found ? std::optional<double>(b.value) : std::nullopt, b.key, checksum});
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(ranges);
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), ranges);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  detail::RangeBest best;
  for (const auto& o : outcomes) best.merge(o.best);
  if (!best.found)
    throw DomainError("no unbalanced signed graph of order " + std::to_string(n) + " lies in family " +
                      to_string(spec.family) + (spec.connected_only ? " (connected)" : ""));

  const SignedGraph witness = decode_sg6(best.key);
  SearchCertificate cert;
  cert.spec = spec;
  cert.best_value = objective_value(witness, spec.objective);
  cert.witness = best.key;
  for (const auto& o : outcomes)
    for (const auto& st : o.stats)
      if (!spec.prune || st.bound >= best.value - kTieTol) {
        ++cert.labeled_graphs_examined;
        cert.classes_examined += st.classes;
      }
  cert.witness_checks = compute_witness_checks(witness, spec.family);
  cert.matches_construction = compute_construction_match(witness, spec);
  cert.optimal_class_count = best.ties.size();
  cert.resumed_ranges = resumed;
  cert.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return cert;
}

}  // namespace sgx
