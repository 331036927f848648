#pragma once

// Search certificates: JSON round trip and independent verification of the
// recorded witness. Verification never re-runs the search.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgx/canon.hpp"
#include "sgx/errors.hpp"
#include "sgx/search_spec.hpp"
#include "sgx/sg6.hpp"

namespace sgx {

struct WitnessChecks {
  bool unbalanced = false;
  bool family_free = false;
  bool connected = false;
  friend bool operator==(const WitnessChecks&, const WitnessChecks&) = default;
};

struct ConstructionMatch {
  std::string name;
  int s = 0;
  int n = 0;
  bool switching_isomorphic = false;
};

struct SearchCertificate {
  SearchSpec spec;
  double best_value = 0.0;
  std::string witness;  // sg6 of the switching canonical form
  std::uint64_t classes_examined = 0;
  std::uint64_t labeled_graphs_examined = 0;
  WitnessChecks witness_checks;
  std::optional<ConstructionMatch> matches_construction;
  std::uint64_t optimal_class_count = 0;  // distinct classes within the tie tolerance of best_value
  std::uint64_t resumed_ranges = 0;       // ranges taken from a checkpoint journal
  double wall_seconds = 0.0;
};

inline WitnessChecks compute_witness_checks(const SignedGraph& g, const Family& f) {
  return {!is_balanced(g), family_satisfied(g, f), is_connected(g)};
}

inline std::optional<ConstructionMatch> compute_construction_match(const SignedGraph& g, const SearchSpec& spec) {
  const auto ref = expected_construction(spec);
  if (!ref) return std::nullopt;
  return ConstructionMatch{ref->name, ref->s, ref->n, switching_isomorphic(g, ref->build())};
}

inline nlohmann::ordered_json spec_to_json(const SearchSpec& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["objective"] = to_string(s.objective);
  j["family"] = family_name(s.family);
  if (s.family.has_param())
    j["family_param"] = s.family.param;
  else
    j["family_param"] = nullptr;
  j["connected_only"] = s.connected_only;
  j["prune"] = s.prune;
  j["dedup"] = s.dedup;
  return j;
}

inline nlohmann::ordered_json to_json(const SearchCertificate& c) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["spec"] = spec_to_json(c.spec);
  j["best_value"] = c.best_value;
  j["witness"] = c.witness;
  j["classes_examined"] = c.classes_examined;
  j["labeled_graphs_examined"] = c.labeled_graphs_examined;
  j["witness_checks"] = {{"unbalanced", c.witness_checks.unbalanced},
                         {"family_free", c.witness_checks.family_free},
                         {"connected", c.witness_checks.connected}};
  if (c.matches_construction) {
    const auto& m = *c.matches_construction;
    nlohmann::ordered_json mj;
    mj["name"] = m.name;
    mj["params"] = {{"s", m.s}, {"n", m.n}};
    mj["switching_isomorphic"] = m.switching_isomorphic;
    j["matches_construction"] = mj;
  } else {
    j["matches_construction"] = nullptr;
  }
  j["optimal_class_count"] = c.optimal_class_count;
  j["resumed_ranges"] = c.resumed_ranges;
  j["wall_seconds"] = c.wall_seconds;
  return j;
}

inline SearchCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != 1) throw DomainError("unsupported certificate schema");
    SearchCertificate c;
    const auto& s = j.at("spec");
    c.spec.n = s.at("n").get<int>();
    c.spec.objective = parse_objective(s.at("objective").get<std::string>());
    const int param = s.at("family_param").is_null() ? 0 : s.at("family_param").get<int>();
    c.spec.family = parse_family(s.at("family").get<std::string>(), param);
    c.spec.connected_only = s.at("connected_only").get<bool>();
    c.spec.prune = s.at("prune").get<bool>();
    c.spec.dedup = s.at("dedup").get<bool>();
    c.best_value = j.at("best_value").get<double>();
    c.witness = j.at("witness").get<std::string>();
    c.classes_examined = j.at("classes_examined").get<std::uint64_t>();
    c.labeled_graphs_examined = j.at("labeled_graphs_examined").get<std::uint64_t>();
    const auto& w = j.at("witness_checks");
    c.witness_checks = {w.at("unbalanced").get<bool>(), w.at("family_free").get<bool>(), w.at("connected").get<bool>()};
    if (!j.at("matches_construction").is_null()) {
      const auto& m = j.at("matches_construction");
      c.matches_construction = ConstructionMatch{m.at("name").get<std::string>(), m.at("params").at("s").get<int>(),
                                                 m.at("params").at("n").get<int>(),
                                                 m.at("switching_isomorphic").get<bool>()};
    }
    c.optimal_class_count = j.at("optimal_class_count").get<std::uint64_t>();
    c.resumed_ranges = j.value("resumed_ranges", std::uint64_t{0});
    c.wall_seconds = j.at("wall_seconds").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed certificate: ") + e.what());
  }
}

/// Certificate text with wall_seconds removed, for run-to-run comparison.
inline std::string certificate_fingerprint(const SearchCertificate& c) {
  auto j = to_json(c);
  j.erase("wall_seconds");
  return j.dump();
}

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::optional<double> recomputed_value;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
};

inline VerificationReport verify_certificate(const SearchCertificate& c) {
  VerificationReport r;
  std::optional<SignedGraph> g;
  try {
    g = decode_sg6(c.witness);
  } catch (const ParseError& e) {
    r.fail(std::string("decode failure: ") + e.what());
    return r;
  }
  if (static_cast<int>(g->order()) != c.spec.n) {
    r.fail("order mismatch");
    return r;
  }
  const auto checks = compute_witness_checks(*g, c.spec.family);
  if (!checks.unbalanced) r.fail("not unbalanced");
  if (!checks.family_free) r.fail("family violation");
  if (c.spec.connected_only && !checks.connected) r.fail("disconnected");
  if (!(checks == c.witness_checks)) r.fail("witness_checks mismatch");
  const double v = objective_value(*g, c.spec.objective);
  r.recomputed_value = v;
  if (!(std::abs(v - c.best_value) <= kObjectiveTol)) r.fail("objective mismatch");
  if (c.matches_construction) {
    const auto& m = *c.matches_construction;
    bool iso = false;
    try {
      iso = switching_isomorphic(*g, gamma(m.s, m.n));
    } catch (const DomainError&) {
      r.fail("construction parameters invalid");
    }
    if (iso != m.switching_isomorphic) r.fail("construction match mismatch");
  }
  return r;
}

}  // namespace sgx
