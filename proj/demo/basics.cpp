// Builds a few signed graphs, prints their spectra and forbidden-structure
// counts, and shows switching and canonical forms.

#include <cstdio>

#include "sgx/sgx.hpp"

using namespace sgx;

static void show(const char* label, const SignedGraph& g) {
  const auto sp = spectrum(g);
  std::printf("%-18s %-16s n=%zu m=%zu neg=%zu  index=%.9f  rho=%.9f  balanced=%s\n", label, encode_sg6(g).c_str(),
              g.order(), g.size(), g.negative_edge_count(), sp.index(), sp.spectral_radius(),
              is_balanced(g) ? "yes" : "no");
}

int main() {
  show("gamma(2,5)", gamma(2, 5));
  show("sigma(1,2,10)", sigma(1, 2, 10));
  show("K6 one negative", complete_one_negative(6));

  // index of gamma(s,8) from the cubic, against the eigensolver
  for (int s = 1; s <= 6; ++s)
    std::printf("s=%d  root of %s = %.12f  eigen %.12f\n", s, f_poly(s, 8).to_string("x").c_str(),
                lambda1_gamma(s, 8), index(gamma(s, 8)));

  // unbalanced K4 copies and the tK4-free threshold
  for (std::int64_t t : {2, 4, 7}) {
    const int r = *r_of_t(t);
    const auto g = gamma(r, 9);
    std::printf("t=%lld r=%d: gamma(%d,9) has %zu unbalanced K4, tK4-free %s\n", static_cast<long long>(t), r, r,
                count_unbalanced_k4(g), is_tk4_free(g, t) ? "yes" : "no");
  }

  // switching keeps the spectrum; the canonical form forgets labels and signs
  const auto g = gamma(2, 6);
  const auto h = switching(g, VertexSet(6, {0, 3, 4}));
  show("switched", h);
  std::printf("same class: %s, canonical %s\n", switching_isomorphic(g, h) ? "yes" : "no",
              switching_canonical_sg6(h).c_str());
  std::printf("balanced clique number of K5 one negative: %zu\n", balanced_clique_number(complete_one_negative(5)));
}
