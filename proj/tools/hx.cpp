// hx: batch command-line driver for the Hecke algebra workbench.
//
// Exit codes: 0 success, 1 usage/config error, 2 gating error (computation
// not defined for this input), 3 internal invariant violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hx/coxeter.hpp"
#include "hx/error.hpp"
#include "hx/finite_group.hpp"
#include "hx/hecke.hpp"
#include "hx/klbasis.hpp"
#include "hx/positivity.hpp"
#include "hx/report.hpp"

namespace {

  using nlohmann::json;
  using namespace hx;

  struct JobConfig {
    std::string              type;
    std::string              matrix_path;
    std::string              weights = "equal";
    std::vector<std::string> elements;
    std::optional<std::size_t> radius;
    std::optional<std::size_t> max_length;
    std::optional<std::size_t> member_limit;
    std::optional<double>      time_budget;
    std::string              out;
    std::string              config;
    bool                     json_format = false;
    bool                     csv         = false;
    bool                     exhaustive  = false;
    bool                     quiet       = false;
    unsigned                 jobs        = 0;
    std::uint64_t            seed        = 1;
    std::size_t              samples     = 20000;
  };

  // Fills options not given on the command line from a JSON config file.
  void apply_config(JobConfig& cfg, CLI::App const& app) {
    std::ifstream in(cfg.config);
    if (!in) {
      throw UsageError("cannot read config file " + cfg.config);
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw UsageError("config file " + cfg.config + " is not a JSON object");
    }
    auto unset = [&](char const* flag) { return app.count(flag) == 0; };
    try {
      if (j.contains("type") && unset("--type")) {
        cfg.type = j["type"].get<std::string>();
      }
      if (j.contains("matrix") && unset("--matrix")) {
        cfg.matrix_path = j["matrix"].get<std::string>();
      }
      if (j.contains("weights") && unset("--weights")) {
        auto const& w = j["weights"];
        if (w.is_array()) {
          std::string s;
          for (auto const& x : w) {
            s += (s.empty() ? "" : ",") + std::to_string(x.get<int>());
          }
          cfg.weights = s;
        } else {
          cfg.weights = w.get<std::string>();
        }
      }
      if (j.contains("element") && unset("--element")) {
        cfg.elements = j["element"].get<std::vector<std::string>>();
      }
      if (j.contains("radius") && unset("--radius")) {
        cfg.radius = j["radius"].get<std::size_t>();
      }
      if (j.contains("max_length") && unset("--max-length")) {
        cfg.max_length = j["max_length"].get<std::size_t>();
      }
      if (j.contains("out") && unset("--out")) {
        cfg.out = j["out"].get<std::string>();
      }
      if (j.contains("jobs") && unset("--jobs")) {
        cfg.jobs = j["jobs"].get<unsigned>();
      }
      if (j.contains("seed") && unset("--seed")) {
        cfg.seed = j["seed"].get<std::uint64_t>();
      }
      if (j.contains("samples") && unset("--samples")) {
        cfg.samples = j["samples"].get<std::size_t>();
      }
      if (j.contains("exhaustive") && unset("--exhaustive")) {
        cfg.exhaustive = j["exhaustive"].get<bool>();
      }
      if (j.contains("member_limit") && unset("--member-limit")) {
        cfg.member_limit = j["member_limit"].get<std::size_t>();
      }
      if (j.contains("time_budget") && unset("--time-budget")) {
        cfg.time_budget = j["time_budget"].get<double>();
      }
    } catch (json::exception const& e) {
      throw UsageError(std::string("bad config value: ") + e.what());
    }
  }

  coxeter::System load_system(JobConfig const& cfg) {
    if (!cfg.type.empty() && !cfg.matrix_path.empty()) {
      throw UsageError("give either --type or --matrix, not both");
    }
    if (!cfg.matrix_path.empty()) {
      std::ifstream in(cfg.matrix_path);
      if (!in) {
        throw UsageError("cannot read matrix file " + cfg.matrix_path);
      }
      json j = json::parse(in, nullptr, false);
      if (j.is_discarded()) {
        throw UsageError("matrix file " + cfg.matrix_path + " is not JSON");
      }
      return report::system_from_matrix_json(j);
    }
    if (cfg.type.empty()) {
      throw UsageError("a Coxeter type is required (--type or --matrix)");
    }
    return coxeter::System::from_label(cfg.type);
  }

  std::vector<int> parse_ints(std::string const& s, char const* what) {
    std::vector<int> out;
    if (s.empty() || s == "e") {
      return out;
    }
    std::stringstream ss(s);
    std::string       item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        int         v   = std::stoi(item, &pos);
        if (pos != item.size()) {
          throw std::invalid_argument(item);
        }
        out.push_back(v);
      } catch (std::exception const&) {
        throw UsageError(std::string("bad ") + what + " '" + s + "'");
      }
    }
    return out;
  }

  hecke::WeightFunction load_weights(JobConfig const& cfg,
                                     coxeter::System const& sys) {
    if (cfg.weights == "equal" || cfg.weights.empty()
        || cfg.weights == "L=1^rank"
        || cfg.weights == "L=1^" + std::to_string(sys.rank())) {
      return hecke::WeightFunction::equal(sys);
    }
    return hecke::make_weight(sys, parse_ints(cfg.weights, "weights"));
  }

  coxeter::Element parse_element(coxeter::System const& sys,
                                 std::string const&     s) {
    return sys.normal_form(parse_ints(s, "element"));
  }

  void emit(JobConfig const& cfg, std::string const& text) {
    if (cfg.out.empty() || cfg.out == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(cfg.out);
    if (!out) {
      throw UsageError("cannot write " + cfg.out);
    }
    out << text;
  }

  void emit_json(JobConfig const& cfg, json const& j) {
    emit(cfg, j.dump(2) + "\n");
  }

  void progress(JobConfig const& cfg, std::string const& msg) {
    if (!cfg.quiet) {
      std::cerr << "[hx] " << msg << std::endl;
    }
  }

  // KL solver for the configured system, seeded from HX_CACHE_DIR if present.
  kl::KazhdanLusztig make_kl(JobConfig const& cfg, coxeter::System const& sys) {
    kl::KazhdanLusztig kl(hecke::HeckeAlgebra(sys, load_weights(cfg, sys)));
    std::size_t        n = report::load_kl_cache(kl);
    if (n > 0) {
      progress(cfg, "loaded " + std::to_string(n) + " cached KL elements");
    }
    return kl;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////////

  void run_group(JobConfig const& cfg) {
    auto sys = load_system(cfg);
    load_weights(cfg, sys);
    emit_json(cfg, report::group_report(sys, cfg.max_length));
  }

  void run_weights(JobConfig const& cfg) {
    if (cfg.type.empty()) {
      throw UsageError("weights needs --type");
    }
    coxeter::System::from_label(cfg.type);
    emit_json(cfg, report::weights_report(cfg.type));
  }

  void run_kl_basis(JobConfig const& cfg) {
    auto                          sys = load_system(cfg);
    auto                          kl  = make_kl(cfg, sys);
    std::vector<coxeter::Element> elems;
    for (auto const& s : cfg.elements) {
      elems.push_back(parse_element(sys, s));
    }
    if (elems.empty()) {
      elems = sys.enumerate(cfg.max_length);
    }
    json out = report::kl_basis_report(kl, elems);
    if (!cfg.elements.empty() || cfg.max_length) {
      emit_json(cfg, out);
      return;
    }
    report::save_kl_cache(kl, elems);
    emit_json(cfg, out);
  }

  void run_kl_hconst(JobConfig const& cfg) {
    auto sys = load_system(cfg);
    auto kl  = make_kl(cfg, sys);
    if (cfg.elements.size() == 2) {
      emit_json(cfg, report::hconst_report(kl, parse_element(sys, cfg.elements[0]),
                                           parse_element(sys, cfg.elements[1])));
      return;
    }
    if (!cfg.elements.empty()) {
      throw UsageError("kl hconst takes exactly two --element values (x, y)");
    }
    if (!sys.is_finite()) {
      throw GatingError("full h-table needs a finite group; pass two --element");
    }
    auto elems = sys.enumerate();
    json out   = report::header(sys, &kl.algebra().weights());
    json table = json::array();
    for (auto const& x : elems) {
      for (auto const& y : elems) {
        table.push_back({{"x", report::to_json(x)},
                         {"y", report::to_json(y)},
                         {"terms", report::terms_json(kl.h_constants(x, y))}});
      }
    }
    out["table"] = table;
    emit_json(cfg, out);
  }

  kl::FiniteKL make_finite_kl(JobConfig const& cfg) {
    auto sys = load_system(cfg);
    if (!sys.is_finite()) {
      throw GatingError("a-function and J need a finite group, got "
                        + sys.name());
    }
    auto group = std::make_shared<coxeter::FiniteGroup const>(sys);
    auto kl    = make_kl(cfg, sys);
    kl::FiniteKL fk(group, kl, cfg.jobs);
    report::save_kl_cache(kl, group->elements());
    return fk;
  }

  void run_kl_afunction(JobConfig const& cfg) {
    auto fk = make_finite_kl(cfg);
    emit_json(cfg, report::afunction_report(fk, fk.a_function()));
  }

  void run_jring(JobConfig const& cfg, std::string const& what) {
    auto fk = make_finite_kl(cfg);
    auto j  = fk.j_ring();
    if (what == "table") {
      emit_json(cfg, report::jtable_report(j));
      return;
    }
    if (what == "check") {
      auto rep = j.check_associativity(cfg.exhaustive, cfg.seed, cfg.samples);
      progress(cfg, std::string("associativity ") + (rep.passed ? "pass" : "FAIL")
                        + " over " + std::to_string(rep.triples) + " triples");
      emit_json(cfg, report::jchecks_report(j, rep, std::nullopt));
      return;
    }
    auto unit = j.find_unit();
    progress(cfg, "unit: " + unit.detail);
    emit_json(cfg, report::jchecks_report(j, std::nullopt, unit));
  }

  void run_fprobe(JobConfig const& cfg) {
    auto                sys = load_system(cfg);
    hecke::HeckeAlgebra alg(sys, load_weights(cfg, sys));
    if (!cfg.radius && !sys.is_finite()) {
      throw GatingError("infinite group " + sys.name() + " requires --radius");
    }
    auto probe = alg.f_bound_probe(cfg.radius, cfg.jobs);
    emit_json(cfg, report::fprobe_report(alg, cfg.radius, probe));
  }

  void run_positivity(JobConfig const& cfg) {
    auto sys = load_system(cfg);
    if (!sys.is_finite()) {
      throw GatingError("positivity needs a finite Weyl group, got "
                        + sys.name());
    }
    if (!load_weights(cfg, sys).is_equal_parameter()) {
      throw GatingError("positivity is defined for equal parameters only");
    }
    positivity::Options opts;
    opts.jobs         = cfg.jobs;
    opts.member_limit = cfg.member_limit;
    opts.time_budget  = cfg.time_budget;
    opts.progress     = [&](std::string const& m) { progress(cfg, m); };
    auto reports      = positivity::classify_positive(sys, opts);
    if (cfg.csv) {
      emit(cfg, report::positivity_csv(reports));
    } else {
      emit_json(cfg, report::positivity_report(reports));
    }
    std::string summary = report::positivity_summary(reports);
    if (cfg.out.empty() || cfg.out == "-") {
      std::cerr << summary << std::endl;
    } else {
      std::cout << summary << std::endl;
    }
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hx: Iwahori-Hecke algebra workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  JobConfig cfg;
  app.add_option("--type", cfg.type, "Coxeter type label, e.g. A3, B4, ~G2");
  app.add_option("--matrix", cfg.matrix_path,
                 "JSON file with an explicit Coxeter matrix (\"inf\" for infinity)");
  app.add_option("--weights", cfg.weights, "weights a,b,... or 'equal'");
  app.add_option("--element", cfg.elements,
                 "element as 0-based generator indices i,j,... (repeatable)")
      ->take_all();
  app.add_option("--radius", cfg.radius, "length bound for hecke fprobe");
  app.add_option("--max-length", cfg.max_length, "length bound for enumeration");
  app.add_option("--member-limit", cfg.member_limit,
                 "C_min members traced per class (default all)");
  app.add_option("--time-budget", cfg.time_budget,
                 "seconds of positivity tracing before each class falls back to one C_min member");
  app.add_option("--out", cfg.out, "write the report here instead of stdout (- for stdout)");
  app.add_option("--config", cfg.config, "JSON file supplying option defaults");
  app.add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  app.add_option("--samples", cfg.samples, "triples for sampled checks");
  auto* json_flag = app.add_flag("--json", cfg.json_format, "JSON output (default)");
  auto* csv_flag  = app.add_flag("--csv", cfg.csv, "CSV output (positivity)");
  json_flag->excludes(csv_flag);
  app.add_flag("--exhaustive", cfg.exhaustive, "force exhaustive checks");
  app.add_flag("--quiet", cfg.quiet, "no progress on stderr");

  std::function<void()> action;
  auto leaf = [&](CLI::App* parent, std::string const& name,
                  std::string const& help, std::function<void()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&action, fn]() { action = fn; });
    return sub;
  };

  leaf(&app, "group", "order, conjugacy classes, special elements",
       [&] { run_group(cfg); });
  leaf(&app, "weights", "catalog of admissible weight tuples",
       [&] { run_weights(cfg); });
  leaf(&app, "positivity", "trace N^w and positive conjugacy classes",
       [&] { run_positivity(cfg); });

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig basis data");
  kl->fallthrough();
  kl->require_subcommand(1);
  leaf(kl, "basis", "c_w in the T-basis", [&] { run_kl_basis(cfg); });
  leaf(kl, "hconst", "structure constants h_{x,y,z}", [&] { run_kl_hconst(cfg); });
  leaf(kl, "afunction", "the a-function", [&] { run_kl_afunction(cfg); });

  auto* jr = app.add_subcommand("jring", "the asymptotic ring J");
  jr->fallthrough();
  jr->require_subcommand(1);
  leaf(jr, "table", "gamma structure constants", [&] { run_jring(cfg, "table"); });
  leaf(jr, "check", "associativity check", [&] { run_jring(cfg, "check"); });
  leaf(jr, "unit", "search for a unit element", [&] { run_jring(cfg, "unit"); });

  auto* he = app.add_subcommand("hecke", "Hecke algebra probes");
  he->fallthrough();
  he->require_subcommand(1);
  leaf(he, "fprobe", "degree bound of f_{x,y,z}", [&] { run_fprobe(cfg); });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!cfg.config.empty()) {
      apply_config(cfg, app);
    }
    if (action) {
      action();
    }
  } catch (hx::Error const& e) {
    std::cerr << "hx: " << e.what() << std::endl;
    return e.exit_code();
  } catch (nlohmann::json::exception const& e) {
    std::cerr << "hx: bad JSON input: " << e.what() << std::endl;
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "hx: internal error: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}
