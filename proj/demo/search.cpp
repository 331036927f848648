// Runs an extremal search and re-verifies its certificate.
// usage: demo_search [n] [t]

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "sgx/sgx.hpp"

using namespace sgx;

int main(int argc, char** argv) {
  SearchSpec spec;
  spec.n = argc > 1 ? std::atoi(argv[1]) : 6;
  spec.family = Family::tk4_free(argc > 2 ? std::atoi(argv[2]) : 2);
  spec.jobs = 2;
  try {
    const auto cert = extremal_search(spec);
    std::cout << to_json(cert).dump(2) << "\n";
    const auto check = verify_certificate(cert);
    std::printf("certificate %s\n", check.ok ? "verifies" : "FAILS");
    const auto rep = verify_extremal_structure(decode_sg6(cert.witness), spec.family.param);
    std::printf("connected %d, negative edges %zu, common neighbours %zu\n", rep.connected, rep.negative_edges,
                rep.common_neighbors.value_or(0));
    return check.ok ? 0 : 3;
  } catch (const CapabilityError& e) {
    std::fprintf(stderr, "guard %s: %s\n", e.guard.c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
