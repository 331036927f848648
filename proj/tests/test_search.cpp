#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "sgx/sgx.hpp"

using namespace sgx;

namespace {

SearchSpec make_spec(int n, Family f, Objective o = Objective::index, bool connected = false) {
  SearchSpec s;
  s.n = n;
  s.family = f;
  s.objective = o;
  s.connected_only = connected;
  return s;
}

std::vector<Family> families_for(int n) {
  std::vector<Family> out{Family::all_unbalanced(), Family::c3_free()};
  for (int t : {1, 2, 3}) out.push_back(Family::tk4_free(t));
  for (int r = 3; r <= n; ++r) out.push_back(Family::kr_free(r));
  return out;
}

// One pass over every labelled signed graph of order n; records, per
// search setting, the best value and the switching classes attaining it.
struct OracleTable {
  struct Entry {
    double value = -1.0;
    std::set<std::string> classes;
  };
  std::map<std::string, Entry> best;

  static std::string key(const Family& f, Objective o, bool connected) {
    return to_string(f) + "/" + to_string(o) + (connected ? "/c" : "");
  }

  explicit OracleTable(int n) {
    const auto fams = families_for(n);
    oracle::for_each_signed_graph(static_cast<std::size_t>(n), [&](const SignedGraph& g) {
      if (oracle::balanced(g)) return;
      const auto sp = spectrum(g);
      const bool conn = is_connected(g);
      std::string canon;
      for (const auto& f : fams) {
        if (!oracle::in_family(g, f)) continue;
        for (Objective o : {Objective::index, Objective::spectral_radius}) {
          const double v = o == Objective::index ? sp.index() : sp.spectral_radius();
          for (bool c : {false, true}) {
            if (c && !conn) continue;
            auto& e = best[key(f, o, c)];
            if (v < e.value - 1e-9) continue;
            if (canon.empty()) canon = switching_canonical_sg6(g);
            if (v > e.value + 1e-9) {
              e.value = v;
              e.classes.clear();
            }
            e.classes.insert(canon);
          }
        }
      }
    });
  }
};

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sgx_test_" + name)).string();
}

}  // namespace

TEST_CASE("switching class enumeration", "[search]") {
  const auto c4 = enumerate_switching_classes(SignedGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  CHECK(c4.size() == 2);
  CHECK(enumerate_switching_classes(complete_positive(4)).size() == 8);
  CHECK(enumerate_switching_classes(SignedGraph(3)).size() == 1);

  // orbit oracle: classes = distinct orbits of all 2^m signatures under the
  // 2^n switchings, for every labelled underlying graph on 5 vertices
  for (std::uint64_t mask = 0; mask < 1024; mask += 7) {
    const auto g = detail::graph_from_masks(5, mask, 0);
    const auto reps = enumerate_switching_classes(g);
    const auto f = canonical_forest(g);
    CHECK(reps.size() == (std::size_t{1} << (g.size() - 5 + f.components)));
    for (const auto& r : reps) {
      CHECK(r.same_underlying(g));
      for (const auto& e : r.edges())
        if (f.is_tree_edge(e.u, e.v)) CHECK(e.sign == Sign::positive);
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size() && j < i + 4; ++j)
        CHECK_FALSE(oracle::switching_equivalent(reps[i], reps[j]));
  }
}

TEST_CASE("underlying graph bounds the index", "[search][property]") {
  CHECK(underlying_upper_bound(SignedGraph(0)) == 0.0);
  oracle::for_each_signed_graph(4, [](const SignedGraph& g) {
    CHECK(index(g) <= underlying_upper_bound(g) + 1e-9);
    CHECK(spectral_radius(g) <= underlying_upper_bound(g) + 1e-9);
  });
}

TEST_CASE("search spec parsing and validation", "[search]") {
  CHECK(parse_objective("rho") == Objective::spectral_radius);
  CHECK_THROWS_AS(parse_objective("size"), DomainError);
  CHECK(parse_family("tk4-free", 2) == Family::tk4_free(2));
  CHECK(parse_family("kr", 4) == Family::kr_free(4));
  CHECK(to_string(Family::tk4_free(2)) == "tk4_free(2)");
  CHECK_THROWS_AS(parse_family("all", 0), DomainError);

  auto s = make_spec(9, Family::all_unbalanced());
  try {
    validate(s);
    FAIL("expected a guard");
  } catch (const CapabilityError& e) {
    CHECK(e.guard == "max_search_order");
  }
  s.n = 7;
  s.prune = false;
  try {
    validate(s);
    FAIL("expected a guard");
  } catch (const CapabilityError& e) {
    CHECK(e.guard == "exhaustive_order");
  }
  CHECK_THROWS_AS(validate(make_spec(5, Family::kr_free(2))), DomainError);
  CHECK_THROWS_AS(validate(make_spec(5, Family::tk4_free(0))), DomainError);

  auto a = make_spec(6, Family::tk4_free(2));
  auto b = a;
  b.jobs = 4;
  b.checkpoint_path = "/tmp/x";
  CHECK(spec_checksum(a) == spec_checksum(b));
  b.connected_only = true;
  CHECK(spec_checksum(a) != spec_checksum(b));
}

TEST_CASE("seed graphs lie in their family", "[search]") {
  for (int n = 3; n <= 8; ++n)
    for (const auto& f : families_for(n)) {
      const auto seed = seed_graph(make_spec(n, f));
      if (!seed) continue;
      CHECK(seed->order() == static_cast<std::size_t>(n));
      CHECK_FALSE(is_balanced(*seed));
      CHECK(family_satisfied(*seed, f));
      CHECK(is_connected(*seed));
    }
}

TEST_CASE("search at n = 4 finds K4 with one negative edge", "[search]") {
  const auto c = extremal_search(make_spec(4, Family::all_unbalanced()));
  CHECK(c.best_value == Catch::Approx(std::sqrt(5.0)).margin(1e-12));
  CHECK(switching_isomorphic(decode_sg6(c.witness), complete_one_negative(4)));
  CHECK(c.optimal_class_count == 1);
  REQUIRE(c.matches_construction.has_value());
  CHECK(c.matches_construction->switching_isomorphic);
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("search agrees with the labelled oracle at n = 4 and 5", "[search][property]") {
  for (int n : {4, 5}) {
    const OracleTable table(n);
    for (const auto& f : families_for(n))
      for (Objective o : {Objective::index, Objective::spectral_radius})
        for (bool conn : {false, true}) {
          const auto it = table.best.find(OracleTable::key(f, o, conn));
          auto spec = make_spec(n, f, o, conn);
          INFO("n=" << n << " " << OracleTable::key(f, o, conn));
          if (it == table.best.end()) {
            CHECK_THROWS_AS(extremal_search(spec), DomainError);
            continue;
          }
          const auto c = extremal_search(spec);
          CHECK(c.best_value == Catch::Approx(it->second.value).margin(1e-8));
          CHECK(c.optimal_class_count == it->second.classes.size());
          CHECK(it->second.classes.count(c.witness) == 1);
          CHECK(c.witness == *it->second.classes.begin());
          CHECK(verify_certificate(c).ok);
        }
  }
}

TEST_CASE("pruned, unpruned and undeduplicated searches agree", "[search][property]") {
  for (int n : {5, 6}) {
    for (const auto& f : families_for(n)) {
      for (Objective o : {Objective::index, Objective::spectral_radius}) {
        auto spec = make_spec(n, f, o);
        INFO("n=" << n << " " << to_string(f) << " " << to_string(o));
        const auto pruned = extremal_search(spec);
        spec.prune = false;
        const auto full = extremal_search(spec);
        CHECK(full.best_value == Catch::Approx(pruned.best_value).margin(1e-12));
        CHECK(full.witness == pruned.witness);
        CHECK(full.optimal_class_count == pruned.optimal_class_count);
        CHECK(full.classes_examined >= pruned.classes_examined);
        if (n == 5) {
          spec.dedup = false;
          const auto raw = extremal_search(spec);
          CHECK(raw.witness == pruned.witness);
          CHECK(raw.optimal_class_count == pruned.optimal_class_count);
          CHECK(raw.labeled_graphs_examined >= full.labeled_graphs_examined);
        }
      }
    }
  }
}

TEST_CASE("search results do not depend on the worker count", "[search]") {
  for (const auto& f : {Family::all_unbalanced(), Family::tk4_free(2), Family::c3_free()}) {
    auto spec = make_spec(6, f);
    const auto one = extremal_search(spec);
    spec.jobs = 4;
    const auto four = extremal_search(spec);
    CHECK(certificate_fingerprint(one) == certificate_fingerprint(four));
  }
}

TEST_CASE("search at n = 6 and 7 finds the expected constructions", "[search]") {
  const auto all6 = extremal_search(make_spec(6, Family::all_unbalanced()));
  CHECK(switching_isomorphic(decode_sg6(all6.witness), complete_one_negative(6)));
  CHECK(all6.best_value == Catch::Approx(lambda1_gamma(4, 6)).margin(1e-8));

  for (int s = 3; s <= 5; ++s) {
    const auto c = extremal_search(make_spec(6, Family::kr_free(s + 1)));
    CHECK(switching_isomorphic(decode_sg6(c.witness), gamma(s - 2, 6)));
    REQUIRE(c.matches_construction.has_value());
    CHECK(c.matches_construction->switching_isomorphic);
  }

  const auto t7 = extremal_search(make_spec(7, Family::tk4_free(2)));
  CHECK(verify_certificate(t7).ok);
  REQUIRE(t7.matches_construction.has_value());
  CHECK(t7.matches_construction->name == "gamma");
  CHECK(t7.matches_construction->s == 2);
  CHECK(t7.matches_construction->switching_isomorphic);
  const auto rep = verify_extremal_structure(decode_sg6(t7.witness), 2);
  CHECK(rep.all_checks_pass());
  CHECK(rep.common_neighbors == std::optional<std::size_t>(2));
}

TEST_CASE("a family with no unbalanced member is reported", "[search]") {
  // on 3 vertices the only cycle is a triangle
  CHECK_THROWS_AS(extremal_search(make_spec(3, Family::c3_free())), DomainError);
}

TEST_CASE("certificates round-trip through JSON and detect tampering", "[search][certificate]") {
  const auto c = extremal_search(make_spec(5, Family::tk4_free(2)));
  const auto j = to_json(c);
  CHECK(j["schema"] == 1);
  CHECK(j["spec"]["family"] == "tk4_free");
  CHECK(j["spec"]["family_param"] == 2);
  const auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
  CHECK(certificate_fingerprint(back) == certificate_fingerprint(c));
  CHECK(verify_certificate(back).ok);

  auto bad = c;
  bad.best_value += 1e-6;
  auto rep = verify_certificate(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures == std::vector<std::string>{"objective mismatch"});

  bad = c;
  bad.witness = encode_sg6(complete_positive(5));
  rep = verify_certificate(bad);
  CHECK_FALSE(rep.ok);
  CHECK(std::find(rep.failures.begin(), rep.failures.end(), "not unbalanced") != rep.failures.end());

  bad = c;
  bad.witness = encode_sg6(complete_one_negative(5));  // 3 unbalanced K4
  rep = verify_certificate(bad);
  CHECK(std::find(rep.failures.begin(), rep.failures.end(), "family violation") != rep.failures.end());

  bad = c;
  bad.witness = "D~{:zz";
  CHECK_FALSE(verify_certificate(bad).ok);
  bad.witness = encode_sg6(gamma(2, 6));
  CHECK(verify_certificate(bad).failures == std::vector<std::string>{"order mismatch"});

  bad = c;
  REQUIRE(bad.matches_construction.has_value());
  bad.matches_construction->switching_isomorphic = !bad.matches_construction->switching_isomorphic;
  CHECK(verify_certificate(bad).failures == std::vector<std::string>{"construction match mismatch"});

  CHECK_THROWS_AS(certificate_from_json(nlohmann::json::parse(R"({"schema":1})")), DomainError);
}

TEST_CASE("journal records", "[search][checkpoint]") {
  const JournalRecord r{64, 128, 2.23606797749979, "C~:04", "00ff00ff00ff00ff"};
  const auto back = parse_journal_record(format_journal_record(r), 1);
  CHECK(back.range_start == 64);
  CHECK(back.range_end == 128);
  CHECK(back.best_value == r.best_value);
  CHECK(back.witness == "C~:04");
  CHECK(back.checksum == r.checksum);

  const JournalRecord empty{0, 1, std::nullopt, "", "abc"};
  CHECK(format_journal_record(empty) == "0 1 - - abc");
  CHECK_FALSE(parse_journal_record("0 1 - - abc", 1).best_value.has_value());
  CHECK_THROWS_AS(parse_journal_record("0 1 - abc", 3), DomainError);
  CHECK_THROWS_AS(parse_journal_record("0 1 2.0 - abc", 3), DomainError);
  CHECK_THROWS_AS(parse_journal_record("5 5 - - abc", 3), DomainError);
  CHECK_THROWS_AS(parse_journal_record("x 5 - - abc", 3), DomainError);

  const auto path = temp_path("journal.txt");
  std::filesystem::remove(path);
  CHECK(read_journal(path).empty());
  {
    std::ofstream out(path);
    out << format_journal_record(r) << "\n" << "0 64 - - 00ff";  // truncated tail
  }
  const auto recs = read_journal(path);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].range_start == 64);
  std::filesystem::remove(path);
}

TEST_CASE("checkpointed searches resume to the same answer", "[search][checkpoint]") {
  const auto path = temp_path("resume.txt");
  std::filesystem::remove(path);
  auto spec = make_spec(6, Family::tk4_free(2));
  const auto plain = extremal_search(spec);
  spec.checkpoint_path = path;
  const auto first = extremal_search(spec);
  CHECK(first.resumed_ranges == 0);
  CHECK(first.witness == plain.witness);
  const auto ranges = read_journal(path).size();
  CHECK(ranges == (std::size_t{1} << 15) / search_range_width(6));

  const auto second = extremal_search(spec);
  CHECK(second.resumed_ranges == ranges);
  CHECK(second.witness == plain.witness);
  CHECK(second.best_value == plain.best_value);
  CHECK(verify_certificate(second).ok);

  // keep only the first half of the journal, as after an interruption
  {
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::ofstream out(path, std::ios::trunc);
    for (std::size_t i = 0; i < lines.size() / 2; ++i) out << lines[i] << "\n";
    out << lines[lines.size() / 2].substr(0, 5);
  }
  const auto third = extremal_search(spec);
  CHECK(third.resumed_ranges == ranges / 2);
  CHECK(third.witness == plain.witness);

  spec.family = Family::tk4_free(3);
  CHECK_THROWS_AS(extremal_search(spec), DomainError);
  std::filesystem::remove(path);
}

TEST_CASE("structure report", "[search][structure]") {
  for (std::int64_t t : {2, 4, 7}) {
    const int r = *r_of_t(t);
    for (int n = r + 2; n <= 10; ++n) {
      // relabel and switch so the report has to recover the structure
      std::vector<Vertex> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = static_cast<Vertex>((i + 3) % n);
      const auto g = switching(relabel(gamma(r, n), perm), VertexSet(static_cast<std::size_t>(n), {1, 2}));
      const auto rep = verify_extremal_structure(g, t);
      CHECK(rep.all_checks_pass());
      CHECK(rep.common_neighbors == std::optional<std::size_t>(static_cast<std::size_t>(r)));
    }
  }
  const auto off = verify_extremal_structure(gamma(3, 8), 2);
  CHECK_FALSE(off.all_checks_pass());
  CHECK(off.common_matches_r == std::optional<bool>(false));

  const auto bal = verify_extremal_structure(complete_positive(5), 2);
  CHECK_FALSE(bal.unbalanced);
  CHECK_FALSE(bal.all_checks_pass());

  const auto odd = verify_extremal_structure(gamma(2, 6), 3);
  CHECK_FALSE(odd.r.has_value());
  CHECK_FALSE(odd.notes.empty());
}
