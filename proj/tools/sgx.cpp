// sgx: command-line front end for the signed-graph toolkit.
//
// Exit codes: 0 success, 1 domain or usage error, 2 resource guard,
// 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgx/sgx.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sgx;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitGuard = 2;
constexpr int kExitVerify = 3;

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int jobs = 1;
  double eq_tol = 1e-8;
  double ord_tol = 1e-9;
  std::string format = "auto";
};

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string resolved_format(const RunConfig& cfg, const char* fallback) {
  return cfg.format == "auto" ? fallback : cfg.format;
}

std::vector<Sg6Record> read_input(const std::string& path) {
  if (path.empty() || path == "-") return read_sg6_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  return read_sg6_stream(in);
}

// Parses "a..b" or "a" into an inclusive range.
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw DomainError("malformed range '" + text + "' (expected a..b)");
  }
}

// ---- construct ------------------------------------------------------------

void add_construct(CLI::App& app) {
  auto* cmd = app.add_subcommand("construct", "Emit a named construction as sg6");
  cmd->require_subcommand(1);

  auto* g = cmd->add_subcommand("gamma", "K_{n-1} plus a vertex joined to s+1 vertices, one join negative");
  auto gs = std::make_shared<int>(0), gn = std::make_shared<int>(0);
  g->add_option("--s", *gs, "s (1 <= s <= n-2)")->required();
  g->add_option("--n", *gn, "order")->required();
  g->callback([gs, gn] { std::cout << encode_sg6(gamma(*gs, *gn)) << '\n'; });

  auto* s = cmd->add_subcommand("sigma", "Five-block construction with one negative edge");
  auto sk = std::make_shared<int>(0), sr = std::make_shared<int>(2), sn = std::make_shared<int>(0);
  s->add_option("--k", *sk, "q-block size (k >= 1)")->required();
  s->add_option("--r", *sr, "w-block clique size (r >= 2)")->capture_default_str();
  s->add_option("--n", *sn, "order (n >= k+r+4)")->required();
  s->callback([sk, sr, sn] { std::cout << encode_sg6(sigma(*sk, *sr, *sn)) << '\n'; });

  auto* cn = cmd->add_subcommand("complete-neg", "K_n with exactly one negative edge");
  auto cnn = std::make_shared<int>(0);
  cn->add_option("--n", *cnn, "order")->required();
  cn->callback([cnn] { std::cout << encode_sg6(complete_one_negative(*cnn)) << '\n'; });

  auto* cp = cmd->add_subcommand("complete-pos", "All-positive K_n");
  auto cpn = std::make_shared<int>(0);
  cp->add_option("--n", *cpn, "order")->required();
  cp->callback([cpn] { std::cout << encode_sg6(complete_positive(*cpn)) << '\n'; });
}

// ---- spectrum ---------------------------------------------------------------

void add_spectrum(CLI::App& app, const RunConfig& cfg) {
  auto* cmd = app.add_subcommand("spectrum", "Eigenvalues, index, spectral radius and balance of sg6 input");
  auto path = std::make_shared<std::string>();
  cmd->add_option("input", *path, "sg6 file (default stdin)");
  cmd->callback([path, &cfg] {
    const auto recs = read_input(*path);
    const auto fmt = resolved_format(cfg, "json");
    if (fmt == "csv") std::cout << "line,n,index,spectral_radius,balanced,negative_edges,eigenvalues\n";
    for (const auto& rec : recs) {
      const auto& g = rec.graph;
      const auto sp = spectrum(g);
      if (fmt == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["line"] = rec.line_number;
        j["eigenvalues"] = sp.eigenvalues;
        j["index"] = sp.index();
        j["spectral_radius"] = sp.spectral_radius();
        j["balanced"] = is_balanced(g);
        j["negative_edges"] = g.negative_edge_count();
        std::cout << j.dump() << '\n';
      } else if (fmt == "csv") {
        std::cout << rec.line_number << ',' << g.order() << ',' << real(sp.index()) << ',' << real(sp.spectral_radius())
                  << ',' << (is_balanced(g) ? "true" : "false") << ',' << g.negative_edge_count() << ',';
        for (std::size_t i = 0; i < sp.size(); ++i) std::cout << (i ? ";" : "") << real(sp.eigenvalues[i]);
        std::cout << '\n';
      } else {
        std::cout << "line " << rec.line_number << "  n=" << g.order() << "  index=" << real(sp.index())
                  << "  rho=" << real(sp.spectral_radius()) << "  balanced=" << (is_balanced(g) ? "yes" : "no")
                  << "  negative_edges=" << g.negative_edge_count() << "\n  eigenvalues:";
        for (double x : sp.eigenvalues) std::cout << ' ' << real(x);
        std::cout << '\n';
      }
    }
  });
}

// ---- check / count-uk4 ------------------------------------------------------

void add_check(CLI::App& app, const RunConfig& cfg) {
  auto* cmd = app.add_subcommand("check", "Forbidden-family verdict for sg6 input");
  auto path = std::make_shared<std::string>();
  auto t = std::make_shared<int>(0), r = std::make_shared<int>(0);
  auto c3 = std::make_shared<bool>(false);
  cmd->add_option("input", *path, "sg6 file (default stdin)");
  auto* o_t = cmd->add_option("--tk4-free", *t, "fewer than T unbalanced K4's");
  auto* o_r = cmd->add_option("--kr-free", *r, "no unbalanced K_R");
  auto* o_c = cmd->add_flag("--c3-free", *c3, "no unbalanced triangle");
  cmd->callback([=, &cfg] {
    const int given = (o_t->count() > 0) + (o_r->count() > 0) + (o_c->count() > 0);
    if (given != 1) throw CLI::ValidationError("check", "exactly one of --tk4-free, --kr-free, --c3-free is required");
    Family fam = o_t->count() ? Family::tk4_free(*t) : o_r->count() ? Family::kr_free(*r) : Family::c3_free();
    if (fam.kind == Family::Kind::tk4_free && *t < 1) throw DomainError("--tk4-free needs T >= 1");
    if (fam.kind == Family::Kind::kr_free && *r < 3) throw DomainError("--kr-free needs R >= 3");
    const auto fmt = resolved_format(cfg, "json");
    if (fmt == "csv") std::cout << "line,family,free,count,balanced\n";
    for (const auto& rec : read_input(*path)) {
      const auto& g = rec.graph;
      const bool balanced = is_balanced(g);
      std::size_t count = 0;
      switch (fam.kind) {
        case Family::Kind::tk4_free: count = count_unbalanced_k4(g); break;
        case Family::Kind::kr_free:
          count = static_cast<std::size_t>(fam.param) <= g.order()
                      ? count_unbalanced_cliques(g, static_cast<std::size_t>(fam.param))
                      : 0;
          break;
        default: count = count_negative_triangles(g); break;
      }
      const bool free = family_satisfied(g, fam);
      if (balanced) std::cerr << "warning: line " << rec.line_number << ": input is balanced\n";
      if (fmt == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["line"] = rec.line_number;
        j["family"] = to_string(fam);
        j["free"] = free;
        j["count"] = count;
        if (fam.kind == Family::Kind::tk4_free) j["count_unbalanced_k4"] = count;
        j["balanced"] = balanced;
        j["warnings"] = balanced ? ordered_json::array({"input is balanced"}) : ordered_json::array();
        std::cout << j.dump() << '\n';
      } else if (fmt == "csv") {
        std::cout << rec.line_number << ',' << to_string(fam) << ',' << (free ? "true" : "false") << ',' << count
                  << ',' << (balanced ? "true" : "false") << '\n';
      } else {
        std::cout << "line " << rec.line_number << "  " << to_string(fam) << "  free=" << (free ? "yes" : "no")
                  << "  count=" << count << (balanced ? "  (input is balanced)" : "") << '\n';
      }
    }
  });

  auto* cu = app.add_subcommand("count-uk4", "Number of unbalanced K4 vertex sets");
  auto cpath = std::make_shared<std::string>();
  cu->add_option("input", *cpath, "sg6 file (default stdin)");
  cu->callback([cpath, &cfg] {
    const auto fmt = resolved_format(cfg, "json");
    if (fmt == "csv") std::cout << "line,count_unbalanced_k4\n";
    for (const auto& rec : read_input(*cpath)) {
      const auto c = count_unbalanced_k4(rec.graph);
      if (fmt == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["line"] = rec.line_number;
        j["count_unbalanced_k4"] = c;
        std::cout << j.dump() << '\n';
      } else if (fmt == "csv") {
        std::cout << rec.line_number << ',' << c << '\n';
      } else {
        std::cout << "line " << rec.line_number << "  unbalanced K4: " << c << '\n';
      }
    }
  });
}

// ---- search -----------------------------------------------------------------

ordered_json structure_json(const StructureReport& s) {
  ordered_json j;
  j["unbalanced"] = s.unbalanced;
  j["connected"] = s.connected;
  j["negative_edges"] = s.negative_edges;
  if (s.negative_edge)
    j["negative_edge"] = {s.negative_edge->first, s.negative_edge->second};
  else
    j["negative_edge"] = nullptr;
  j["r"] = s.r ? ordered_json(*s.r) : ordered_json(nullptr);
  j["common_neighbors"] = s.common_neighbors ? ordered_json(*s.common_neighbors) : ordered_json(nullptr);
  j["common_matches_r"] = s.common_matches_r ? ordered_json(*s.common_matches_r) : ordered_json(nullptr);
  j["switching_isomorphic_to_gamma"] =
      s.isomorphic_to_gamma ? ordered_json(*s.isomorphic_to_gamma) : ordered_json(nullptr);
  j["notes"] = s.notes;
  return j;
}

void print_search_summary(std::ostream& os, const SearchCertificate& c) {
  os << "best value      " << real(c.best_value) << '\n';
  os << "witness         " << c.witness << '\n';
  os << "classes         " << c.classes_examined << '\n';
  os << "labeled graphs  " << c.labeled_graphs_examined << '\n';
  os << "optimal classes " << c.optimal_class_count << '\n';
  if (c.matches_construction)
    os << "matches         " << c.matches_construction->name << '(' << c.matches_construction->s << ','
       << c.matches_construction->n << "): " << (c.matches_construction->switching_isomorphic ? "true" : "false")
       << '\n';
  else
    os << "matches         n/a\n";
  if (c.spec.family.kind == Family::Kind::tk4_free) {
    const auto s = verify_extremal_structure(decode_sg6(c.witness), c.spec.family.param);
    os << "structure       " << structure_json(s).dump() << '\n';
  }
  os << "wall seconds    " << real(c.wall_seconds) << '\n';
}

void add_search(CLI::App& app, const RunConfig& cfg) {
  auto* cmd = app.add_subcommand("search", "Extremal search over unbalanced signed graphs");
  struct Opts {
    int n = 0;
    std::string objective = "index";
    std::string family;
    int t = 0, r = 0;
    bool connected = false, exhaustive = false, no_dedup = false;
    std::string checkpoint, out;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--n", o->n, "order (3..8)")->required();
  cmd->add_option("--objective", o->objective, "index | spectral_radius")->capture_default_str();
  cmd->add_option("--family", o->family, "all-unbalanced | tk4-free | kr-free | c3-free");
  auto* ot = cmd->add_option("--t", o->t, "t for tk4-free (implies the family)");
  auto* orr = cmd->add_option("--r", o->r, "r for kr-free (implies the family)");
  cmd->add_flag("--connected", o->connected, "connected graphs only");
  cmd->add_flag("--exhaustive", o->exhaustive, "disable pruning (n <= 6)");
  cmd->add_flag("--no-dedup", o->no_dedup, "keep isomorphic labelled underlying graphs");
  cmd->add_option("--checkpoint", o->checkpoint, "append-only journal for resumption");
  cmd->add_option("--out", o->out, "certificate file (default stdout)");
  cmd->callback([o, ot, orr, &cfg] {
    SearchSpec s;
    s.n = o->n;
    s.objective = parse_objective(o->objective);
    std::string fam = o->family;
    if (fam.empty()) fam = ot->count() ? "tk4_free" : orr->count() ? "kr_free" : "all_unbalanced";
    s.family = parse_family(fam, 0);
    if (s.family.kind == Family::Kind::tk4_free) {
      if (!ot->count()) throw DomainError("tk4-free family needs --t");
      s.family.param = o->t;
    }
    if (s.family.kind == Family::Kind::kr_free) {
      if (!orr->count()) throw DomainError("kr-free family needs --r");
      s.family.param = o->r;
    }
    s.connected_only = o->connected;
    s.prune = !o->exhaustive;
    s.dedup = !o->no_dedup;
    s.jobs = cfg.jobs;
    if (!o->checkpoint.empty()) s.checkpoint_path = o->checkpoint;
    const auto cert = extremal_search(s);
    const std::string text = to_json(cert).dump(2);
    if (o->out.empty()) {
      std::cout << text << '\n';
      print_search_summary(std::cerr, cert);
    } else {
      std::ofstream f(o->out);
      if (!f) throw DomainError("cannot write certificate to '" + o->out + "'");
      f << text << '\n';
      print_search_summary(std::cout, cert);
    }
  });
}

// ---- verify / verify-certificate / structure -------------------------------

void print_suite(const SuiteReport& rep, const std::string& fmt) {
  if (fmt == "json") {
    ordered_json j;
    j["schema"] = 1;
    j["suite"] = rep.name;
    j["passed"] = rep.passed();
    const auto w = rep.worst_margin();
    j["worst_margin"] = w ? ordered_json(*w) : ordered_json(nullptr);
    j["info"] = rep.info;
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.rows) {
      ordered_json row;
      row["params"] = r.params;
      row["margin"] = r.margin ? ordered_json(*r.margin) : ordered_json(nullptr);
      row["status"] = to_string(r.status);
      row["note"] = r.note;
      rows.push_back(row);
    }
    j["rows"] = rows;
    std::cout << j.dump(2) << '\n';
    return;
  }
  if (fmt == "csv") {
    std::cout << "suite,params,margin,status,note\n";
    for (const auto& r : rep.rows)
      std::cout << rep.name << ',' << r.params << ',' << (r.margin ? real(*r.margin) : "") << ',' << to_string(r.status)
                << ',' << r.note << '\n';
    return;
  }
  std::size_t width = 6;
  for (const auto& r : rep.rows) width = std::max(width, r.params.size());
  std::cout << std::left << std::setw(static_cast<int>(width)) << "params" << "  " << std::setw(20) << "margin"
            << "status  note\n";
  for (const auto& r : rep.rows)
    std::cout << std::left << std::setw(static_cast<int>(width)) << r.params << "  " << std::setw(20)
              << (r.margin ? real(*r.margin) : "-") << std::setw(8) << to_string(r.status) << r.note << '\n';
  for (const auto& i : rep.info) std::cout << "# " << i << '\n';
  const auto w = rep.worst_margin();
  std::cout << "# " << rep.name << ": " << rep.count(RowStatus::pass) << " pass, " << rep.count(RowStatus::fail)
            << " fail, " << rep.count(RowStatus::skip) << " skipped; worst margin " << (w ? real(*w) : "n/a") << '\n';
  std::cout << (rep.passed() ? "PASS\n" : "FAIL\n");
}

void add_verify(CLI::App& app, const RunConfig& cfg) {
  auto* cmd = app.add_subcommand("verify", "Run a named check suite");
  struct Opts {
    std::string suite, n, r, k;
    int n_max = 0, n_min = 0;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("suite", o->suite, "suite name or numeric alias")->required();
  auto* on = cmd->add_option("--n", o->n, "order range a..b");
  auto* onmax = cmd->add_option("--n-max", o->n_max, "largest order");
  auto* onmin = cmd->add_option("--n-min", o->n_min, "smallest order");
  auto* orr = cmd->add_option("--r", o->r, "r range a..b");
  auto* ok = cmd->add_option("--k", o->k, "k range a..b");
  cmd->callback([=, &cfg] {
    SuiteOptions so;
    so.eq_tol = cfg.eq_tol;
    so.ord_tol = cfg.ord_tol;
    so.jobs = cfg.jobs;
    if (on->count()) std::tie(so.n_min, so.n_max) = parse_range(o->n);
    if (onmin->count()) so.n_min = o->n_min;
    if (onmax->count()) so.n_max = o->n_max;
    if (orr->count()) std::tie(so.r_min, so.r_max) = parse_range(o->r);
    if (ok->count()) std::tie(so.k_min, so.k_max) = parse_range(o->k);
    std::string name;
    try {
      name = resolve_suite(o->suite);
    } catch (const DomainError& e) {
      throw CLI::ValidationError("verify", e.what());
    }
    const auto rep = lemma_suite(name, so);
    print_suite(rep, resolved_format(cfg, "table"));
    if (!rep.passed()) throw VerificationFailed("suite " + rep.name + " failed");
  });

  auto* vc = app.add_subcommand("verify-certificate", "Recheck a search certificate without re-running the search");
  auto path = std::make_shared<std::string>();
  vc->add_option("certificate", *path, "certificate JSON file")->required();
  vc->callback([path] {
    std::ifstream in(*path);
    if (!in) throw DomainError("cannot open certificate '" + *path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("certificate is not valid JSON: ") + e.what());
    }
    const auto rep = verify_certificate(certificate_from_json(j));
    ordered_json out;
    out["schema"] = 1;
    out["ok"] = rep.ok;
    out["failures"] = rep.failures;
    out["recomputed_value"] = rep.recomputed_value ? ordered_json(*rep.recomputed_value) : ordered_json(nullptr);
    std::cout << out.dump() << '\n';
    if (!rep.ok) throw VerificationFailed("certificate verification failed");
  });

  auto* st = app.add_subcommand("structure", "Structure report of a tK4-free extremal candidate");
  auto spath = std::make_shared<std::string>();
  auto t = std::make_shared<long long>(2);
  st->add_option("input", *spath, "sg6 file (default stdin)");
  st->add_option("--t", *t, "t of the tK4-free family")->capture_default_str();
  st->callback([spath, t] {
    for (const auto& rec : read_input(*spath)) {
      ordered_json j;
      j["schema"] = 1;
      j["line"] = rec.line_number;
      j["report"] = structure_json(verify_extremal_structure(rec.graph, *t));
      std::cout << j.dump() << '\n';
    }
  });
}

// ---- canon / switch ---------------------------------------------------------

void add_canon_switch(CLI::App& app) {
  auto* c = app.add_subcommand("canon", "Canonical form up to relabelling and switching");
  auto cpath = std::make_shared<std::string>();
  c->add_option("input", *cpath, "sg6 file (default stdin)");
  c->callback([cpath] {
    for (const auto& rec : read_input(*cpath)) std::cout << switching_canonical_sg6(rec.graph) << '\n';
  });

  auto* s = app.add_subcommand("switch", "Switch at a vertex set");
  auto spath = std::make_shared<std::string>();
  auto set = std::make_shared<std::string>();
  s->add_option("input", *spath, "sg6 file (default stdin)");
  s->add_option("--set", *set, "comma-separated vertices (may be empty)")->required();
  s->callback([spath, set] {
    std::vector<long long> vs;
    std::stringstream ss(*set);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        std::size_t used = 0;
        vs.push_back(std::stoll(tok, &used));
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw CLI::ValidationError("--set", "not a vertex: '" + tok + "'");
      }
    }
    for (const auto& rec : read_input(*spath)) {
      VertexSet u(rec.graph.order());
      for (long long v : vs) {
        if (v < 0 || static_cast<std::size_t>(v) >= rec.graph.order())
          throw CLI::ValidationError("--set", "vertex " + std::to_string(v) + " out of range for order " +
                                                  std::to_string(rec.graph.order()));
        u.insert(static_cast<Vertex>(v));
      }
      std::cout << encode_sg6(switching(rec.graph, u)) << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed-graph spectra, forbidden structures and extremal search"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.set_config("--config", "", "key = value configuration file");
  app.add_option("--jobs", cfg.jobs, "worker threads for searches")->envname("SGX_JOBS")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--eq-tol", cfg.eq_tol, "equality tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--ord-tol", cfg.ord_tol, "strict-order tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv | table (default depends on command)")
      ->check(CLI::IsMember({"auto", "json", "csv", "table"}))
      ->capture_default_str();

  add_construct(app);
  add_spectrum(app, cfg);
  add_check(app, cfg);
  add_search(app, cfg);
  add_verify(app, cfg);
  add_canon_switch(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const CapabilityError& e) {
    std::cerr << "guard " << e.guard << ": " << e.what() << '\n';
    return kExitGuard;
  } catch (const VerificationFailed& e) {
    std::cerr << e.what() << '\n';
    return kExitVerify;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}
