// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time budgets are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sgx/sgx.hpp"

using namespace sgx;

namespace {

constexpr double kEqTol = 1e-8;    // eigenvalue identities
constexpr double kOrdTol = 1e-9;   // strict inequalities: a < b as b - a > kOrdTol
constexpr double kRootTol = 1e-6;  // eigensolver vs polynomial root
constexpr double kBoundTol = 1e-9; // slack on upper bounds

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_seconds) {
    o.ok = false;
    o.detail << " [over time budget]";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %s:%s (%.2fs of %.0fs)\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str(), secs,
              budget_seconds);
  std::fflush(stdout);
}

SearchSpec spec_of(int n, Family f, Objective o, bool connected, bool prune, int jobs = 1) {
  SearchSpec s;
  s.n = n;
  s.family = f;
  s.objective = o;
  s.connected_only = connected;
  s.prune = prune;
  s.jobs = jobs;
  return s;
}

std::vector<Family> all_families(int n) {
  std::vector<Family> out{Family::all_unbalanced(), Family::c3_free()};
  for (int t : {1, 2, 3, 4}) out.push_back(Family::tk4_free(t));
  for (int r = 3; r <= n; ++r) out.push_back(Family::kr_free(r));
  return out;
}

int workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

}  // namespace

int main() {
  criterion(1, "index of gamma(s,n) is the largest root of f, n-2 <= index < n-1", 60, [](Outcome& o) {
    std::size_t rows = 0;
    double worst_root = 0, worst_upper = 1e300;
    for (int n = 5; n <= 60; ++n)
      for (int s = 1; s <= n - 2; ++s) {
        ++rows;
        const double lam = index(gamma(s, n));
        const double root = lambda1_gamma(s, n);
        worst_root = std::max(worst_root, std::abs(lam - root));
        worst_upper = std::min(worst_upper, (n - 1) - lam);
        o.require(std::abs(lam - root) <= kRootTol, "eigen vs root at s=" + std::to_string(s) + " n=" + std::to_string(n));
        o.require(lam < n - 1, "upper bound at s=" + std::to_string(s) + " n=" + std::to_string(n));
        if (s == 1)
          o.require(std::abs(lam - (n - 2)) <= kRootTol, "equality at s=1, n=" + std::to_string(n));
        else
          o.require(lam - (n - 2) > kOrdTol, "strict lower bound at s=" + std::to_string(s) + " n=" + std::to_string(n));
      }
    o.detail << " " << rows << " (s,n) pairs, max |eigen - root| " << worst_root << ", min gap to n-1 " << worst_upper;
  });

  criterion(2, "index of gamma(s,n) strictly increasing in s", 60, [](Outcome& o) {
    double smallest = 1e300;
    for (int n = 4; n <= 60; ++n) {
      double prev = index(gamma(1, n));
      for (int s = 2; s <= n - 2; ++s) {
        const double cur = index(gamma(s, n));
        smallest = std::min(smallest, cur - prev);
        o.require(cur - prev > kOrdTol, "chain at s=" + std::to_string(s) + " n=" + std::to_string(n));
        prev = cur;
      }
    }
    o.detail << " n = 4..60, smallest step " << smallest;
  });

  criterion(3, "unbalanced index maximizer is K_n with one negative edge", 300, [](Outcome& o) {
    const double r5 = std::sqrt(5.0);
    o.require(std::abs(lambda1_gamma(2, 4) - r5) <= kEqTol, "lambda1_gamma(2,4) = sqrt 5");
    for (int n : {4, 5}) {
      const auto best = oracle::naive_search(static_cast<std::size_t>(n), Objective::index, Family::all_unbalanced(), false);
      o.require(std::abs(best.value - lambda1_gamma(n - 2, n)) <= kEqTol, "labelled scan value at n=" + std::to_string(n));
      bool all_iso = !best.maximizers.empty();
      for (const auto& g : best.maximizers) all_iso = all_iso && switching_isomorphic(g, complete_one_negative(n));
      o.require(all_iso, "every labelled maximizer at n=" + std::to_string(n));
      o.detail << " n=" << n << ": " << best.value << " (" << best.maximizers.size() << " labelled maximizers)";
    }
    const auto c = extremal_search(spec_of(6, Family::all_unbalanced(), Objective::index, false, false));
    o.require(std::abs(c.best_value - lambda1_gamma(4, 6)) <= kEqTol, "class search value at n=6");
    o.require(switching_isomorphic(decode_sg6(c.witness), complete_one_negative(6)), "class search witness at n=6");
    o.require(c.optimal_class_count == 1, "unique optimal class at n=6");
    o.detail << " n=6: " << c.best_value << " (" << c.classes_examined << " classes, unpruned)";
  });

  criterion(4, "C3-free connected unbalanced: rho <= (sqrt(n^2-8)+n-4)/2", 300, [](Outcome& o) {
    for (int n : {4, 5, 6}) {
      const auto c = extremal_search(spec_of(n, Family::c3_free(), Objective::spectral_radius, true, false));
      const double bound = c3_free_radius_bound(n);
      o.require(c.best_value <= bound + kBoundTol, "bound at n=" + std::to_string(n));
      o.detail << " n=" << n << ": max " << c.best_value << " vs " << bound;
      if (n == 4) {
        o.require(std::abs(c.best_value - std::sqrt(2.0)) <= kEqTol, "value sqrt 2 at n=4");
        o.require(switching_isomorphic(decode_sg6(c.witness), unbalanced_c4()), "attained by the unbalanced C4");
      }
      if (n <= 5) {
        const auto naive = oracle::naive_search(static_cast<std::size_t>(n), Objective::spectral_radius,
                                                Family::c3_free(), true);
        o.require(std::abs(naive.value - c.best_value) <= kEqTol, "labelled scan agrees at n=" + std::to_string(n));
      }
    }
  });

  criterion(5, "K_{s+1}^- free index maximizer at n=6 is gamma(s-2,6)", 600, [](Outcome& o) {
    for (int s = 3; s <= 5; ++s) {
      const auto c = extremal_search(spec_of(6, Family::kr_free(s + 1), Objective::index, false, false));
      o.require(switching_isomorphic(decode_sg6(c.witness), gamma(s - 2, 6)), "witness at s=" + std::to_string(s));
      o.require(std::abs(c.best_value - lambda1_gamma(s - 2, 6)) <= kEqTol, "value at s=" + std::to_string(s));
      o.detail << " s=" << s << ": " << c.best_value;
    }
  });

  criterion(6, "sigma quotient, polynomial, spectrum and monotonicity in k", 120, [](Outcome& o) {
    std::size_t tuples = 0, gated = 0, decreasing = 0;
    for (int n = 30; n <= 60; ++n)
      for (int r = 2; r <= 4; ++r)
        for (int k = 2; k <= 5; ++k) {
          ++tuples;
          const auto c = check_sigma(k, r, n);
          const std::string at = " at k=" + std::to_string(k) + " r=" + std::to_string(r) + " n=" + std::to_string(n);
          // (a), (b), (d) hold on every tuple, not only the gated ones
          o.require(c.quotient_gap <= kEqTol, "(a)" + at);
          o.require(c.h_residual <= 1e-6, "(b)" + at);
          o.require(c.spectrum_gap <= 1e-7, "(d)" + at);
          const double step = index(sigma(k - 1, r, n)) - c.lambda1;
          if (step > kOrdTol) ++decreasing;
          if (c.lambda1 > n - 2) {
            ++gated;
            o.require(step > kOrdTol, "(c)" + at);
          }
        }
    o.detail << " (a),(b),(d) on " << tuples << " tuples; " << gated << " tuples satisfy lambda1 > n-2 for (c); "
             << "strict decrease holds on " << decreasing << "/" << tuples << " regardless";
  });

  criterion(7, "tK4-free search at n=7,8 with t=2", 3600, [](Outcome& o) {
    o.detail << std::boolalpha;
    for (int n : {7, 8}) {
      const auto c = extremal_search(spec_of(n, Family::tk4_free(2), Objective::index, false, true, workers()));
      const auto v = verify_certificate(c);
      o.require(v.ok, "(a) certificate verifies at n=" + std::to_string(n));
      const auto w = decode_sg6(c.witness);
      const auto rep = verify_extremal_structure(w, 2);
      o.require(rep.connected && rep.common_neighbors.has_value(), "(b) structure report at n=" + std::to_string(n));
      o.require(c.matches_construction.has_value(), "(c) construction recorded at n=" + std::to_string(n));
      const bool iso = switching_isomorphic(w, gamma(2, n));
      if (c.matches_construction)
        o.require(c.matches_construction->switching_isomorphic == iso, "(c) recorded match at n=" + std::to_string(n));
      o.detail << " n=" << n << ": " << c.best_value << " witness " << c.witness << ", connected "
               << rep.connected << ", negative edges " << rep.negative_edges << ", common neighbours "
               << rep.common_neighbors.value_or(0) << ", matches gamma(2," << n << ") " << (iso ? "true" : "false")
               << ";";
    }
    for (std::int64_t t : {2, 4, 7, 11}) {
      const int r = *r_of_t(t);
      for (int n = r + 2; n <= 12; ++n) {
        const auto g = gamma(r, n);
        o.require(is_tk4_free(g, t), "(d) free at t=" + std::to_string(t) + " n=" + std::to_string(n));
        o.require(static_cast<std::int64_t>(count_unbalanced_k4(g)) == t - 1,
                  "(d) count at t=" + std::to_string(t) + " n=" + std::to_string(n));
      }
    }
    o.detail << " (d) counts t-1 for t = 2, 4, 7, 11";
  });

  criterion(8, "index <= n(1 - 1/balanced clique number), all graphs n <= 5", 120, [](Outcome& o) {
    double worst = 1e300;
    std::size_t graphs = 0;
    for (std::size_t n = 1; n <= 5; ++n)
      oracle::for_each_signed_graph(n, [&](const SignedGraph& g) {
        ++graphs;
        const double bound = static_cast<double>(n) * (1.0 - 1.0 / static_cast<double>(balanced_clique_number(g)));
        const double gap = bound - index(g);
        worst = std::min(worst, gap);
        if (gap < -kBoundTol) o.require(false, "bound on " + encode_sg6(g));
      });
    o.detail << " " << graphs << " graphs, smallest slack " << worst;
  });

  criterion(9, "switching classes: 2^(m-n+c) canonical signatures, orbit-invariant", 120, [](Outcome& o) {
    std::size_t graphs = 0, signatures = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
      const std::size_t pairs = n * (n - 1) / 2;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        ++graphs;
        const auto base = detail::graph_from_masks(n, mask, 0);
        const std::size_t m = base.size();
        const std::size_t c = canonical_forest(base).components;
        std::set<std::string> canon;
        std::set<std::string> orbits;  // orbit oracle: smallest sg6 over all 2^n switchings
        for (std::uint64_t neg = 0; neg < (std::uint64_t{1} << pairs); ++neg) {
          if (neg & ~mask) continue;
          ++signatures;
          const auto g = detail::graph_from_masks(n, mask, neg);
          const auto cs = canonical_signature(g);
          std::string smallest;
          bool constant = true;
          for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
            const auto h = oracle::switch_bits(g, u);
            constant = constant && canonical_signature(h) == cs;
            const auto text = encode_sg6(h);
            if (smallest.empty() || text < smallest) smallest = text;
          }
          if (!constant) o.require(false, "canonical signature not constant on the class of " + encode_sg6(g));
          canon.insert(encode_sg6(cs));
          orbits.insert(smallest);
        }
        const std::size_t want = std::size_t{1} << (m - n + c);
        if (canon.size() != want || orbits.size() != want || enumerate_switching_classes(base).size() != want)
          o.require(false, "class count on " + encode_sg6(base));
      }
    }
    o.detail << " " << graphs << " labelled underlying graphs, " << signatures << " signatures";
  });

  criterion(10, "determinism across workers; pruned and unpruned searches agree", 600, [](Outcome& o) {
    std::size_t compared = 0;
    for (int n : {5, 6})
      for (const auto& f : all_families(n))
        for (Objective obj : {Objective::index, Objective::spectral_radius})
          for (bool conn : {false, true}) {
            const std::string at = " n=" + std::to_string(n) + " " + to_string(f) + " " + to_string(obj) +
                                   (conn ? " connected" : "");
            const auto p1 = extremal_search(spec_of(n, f, obj, conn, true, 1));
            const auto p4 = extremal_search(spec_of(n, f, obj, conn, true, 4));
            const auto u1 = extremal_search(spec_of(n, f, obj, conn, false, 1));
            const auto u4 = extremal_search(spec_of(n, f, obj, conn, false, 4));
            o.require(certificate_fingerprint(p1) == certificate_fingerprint(p4), "pruned jobs 1 vs 4" + at);
            o.require(certificate_fingerprint(u1) == certificate_fingerprint(u4), "unpruned jobs 1 vs 4" + at);
            o.require(p1.witness == u1.witness && std::abs(p1.best_value - u1.best_value) <= kEqTol &&
                          p1.optimal_class_count == u1.optimal_class_count,
                      "pruned vs unpruned" + at);
            ++compared;
          }
    const auto a = extremal_search(spec_of(7, Family::tk4_free(2), Objective::index, false, true, 1));
    const auto b = extremal_search(spec_of(7, Family::tk4_free(2), Objective::index, false, true, 4));
    o.require(certificate_fingerprint(a) == certificate_fingerprint(b), "jobs 1 vs 4 at n=7");
    o.detail << " " << compared << " search settings at n = 5, 6 plus n=7 tk4_free(2)";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
