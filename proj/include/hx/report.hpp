#ifndef HX_REPORT_HPP_
#define HX_REPORT_HPP_

// JSON and CSV encodings of every computation. Polynomials are always the
// sorted list of [exponent, coefficient] pairs; coefficients that do not fit
// in 64 bits are written as decimal strings. Elements are arrays of 0-based
// generator indices. Key order is fixed by nlohmann::json's sorted objects,
// so equal inputs give byte-identical output.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hx/coxeter.hpp"
#include "hx/error.hpp"
#include "hx/finite_group.hpp"
#include "hx/hecke.hpp"
#include "hx/klbasis.hpp"
#include "hx/laurent.hpp"
#include "hx/positivity.hpp"

namespace hx::report {

  using nlohmann::json;
  using coxeter::Element;
  using coxeter::ElementId;
  using coxeter::FiniteGroup;
  using coxeter::System;

  ////////////////////////////////////////////////////////////////////////////
  // Scalars, polynomials, words
  ////////////////////////////////////////////////////////////////////////////

  inline json to_json(Integer const& c) {
    if (c >= std::numeric_limits<std::int64_t>::min()
        && c <= std::numeric_limits<std::int64_t>::max()) {
      return json(static_cast<std::int64_t>(c));
    }
    return json(c.str());
  }

  inline Integer integer_from_json(json const& j) {
    if (j.is_number_integer()) {
      return Integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
      return Integer(j.get<std::string>());
    }
    throw UsageError("expected an integer, got " + j.dump());
  }

  inline json to_json(LaurentPoly const& p) {
    json out = json::array();
    for (auto const& [e, c] : p.terms()) {
      out.push_back(json::array({e, to_json(c)}));
    }
    return out;
  }

  inline LaurentPoly poly_from_json(json const& j) {
    if (!j.is_array()) {
      throw UsageError("polynomial must be an array of [exponent, coefficient]");
    }
    std::vector<std::pair<int, Integer>> terms;
    for (auto const& t : j) {
      if (!t.is_array() || t.size() != 2) {
        throw UsageError("bad polynomial term " + t.dump());
      }
      terms.emplace_back(t[0].get<int>(), integer_from_json(t[1]));
    }
    return LaurentPoly::from_terms(terms);
  }

  inline json to_json(Element const& e) {
    return json(e.word());
  }

  inline Element element_from_json(System const& sys, json const& j) {
    return sys.normal_form(j.get<coxeter::Word>());
  }

  inline json matrix_json(System const& sys) {
    json m = json::array();
    for (auto const& row : sys.matrix()) {
      json r = json::array();
      for (int e : row) {
        if (e == coxeter::infinity) {
          r.push_back("inf");
        } else {
          r.push_back(e);
        }
      }
      m.push_back(r);
    }
    return m;
  }

  // Accepts [[1,3],[3,1]] with "inf" (or 0) for infinity.
  inline System system_from_matrix_json(json const& j) {
    if (!j.is_array()) {
      throw UsageError("Coxeter matrix must be a JSON array of arrays");
    }
    System::Matrix m;
    for (auto const& row : j) {
      if (!row.is_array()) {
        throw UsageError("Coxeter matrix must be a JSON array of arrays");
      }
      std::vector<int> r;
      for (auto const& e : row) {
        if (e.is_string() && (e == "inf" || e == "infinity")) {
          r.push_back(coxeter::infinity);
        } else if (e.is_number_integer()) {
          int v = e.get<int>();
          if (v == 0) {
            throw UsageError("Coxeter matrix entries must be >= 1; use \"inf\"");
          }
          r.push_back(v);
        } else {
          throw UsageError("bad Coxeter matrix entry " + e.dump());
        }
      }
      m.push_back(std::move(r));
    }
    return System::from_matrix(m);
  }

  inline json header(System const& sys, hecke::WeightFunction const* w) {
    json h;
    h["type"]   = sys.name();
    h["rank"]   = sys.rank();
    h["finite"] = sys.is_finite();
    if (!sys.label()) {
      h["matrix"] = matrix_json(sys);
    }
    if (w != nullptr) {
      h["weights"] = w->values();
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////////
  // coxeter
  ////////////////////////////////////////////////////////////////////////////

  inline json class_json(coxeter::ConjugacyClass const& c, std::size_t id) {
    json j;
    j["id"]                = id;
    j["representative"]    = to_json(c.representative);
    j["size"]              = c.size();
    j["min_length"]        = c.min_length();
    j["min_length_count"]  = c.min_length_set.size();
    j["centralizer_order"] = c.centralizer_order;
    return j;
  }

  // Finite systems: order, classes, longest and Coxeter elements. Infinite
  // systems (or any system given a bound): the element list up to the bound.
  inline json group_report(System const&              sys,
                           std::optional<std::size_t> max_length) {
    json out = header(sys, nullptr);
    if (max_length || !sys.is_finite()) {
      if (!max_length) {
        throw GatingError("infinite group " + sys.name()
                          + " requires --max-length");
      }
      auto  elems = sys.enumerate(max_length);
      json  list  = json::array();
      for (auto const& e : elems) {
        list.push_back(to_json(e));
      }
      out["max_length"] = *max_length;
      out["count"]      = elems.size();
      out["elements"]   = list;
      return out;
    }
    FiniteGroup g(sys);
    out["order"] = g.size();
    auto classes = coxeter::conjugacy_classes(g);
    json cls     = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      cls.push_back(class_json(classes[i], i));
    }
    out["classes"] = cls;
    out["longest"] = to_json(g.element(g.longest()));
    if (sys.is_irreducible()) {
      out["coxeter_element"] = to_json(coxeter::special_elements(g).coxeter_element);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // hecke / klbasis
  ////////////////////////////////////////////////////////////////////////////

  inline json terms_json(std::map<Element, LaurentPoly> const& terms) {
    json out = json::array();
    for (auto const& [w, p] : terms) {
      out.push_back(json::array({to_json(w), to_json(p)}));
    }
    return out;
  }

  inline json fprobe_report(hecke::HeckeAlgebra const&  alg,
                            std::optional<std::size_t> radius,
                            hecke::FProbe const&        probe) {
    json out      = header(alg.system(), &alg.weights());
    out["radius"] = radius ? json(*radius) : json("inf");
    out["n_emp"]  = probe.n_emp;
    out["witness"] = json::array({to_json(probe.x), to_json(probe.y), to_json(probe.z)});
    out["elements"] = probe.elements;
    out["pairs"]    = probe.pairs;
    return out;
  }

  // kl_basis.json: per w, the [y, p_{y,w}] rows of c_w.
  inline json kl_basis_report(kl::KazhdanLusztig const&   kl,
                              std::vector<Element> const& elements) {
    json out  = header(kl.system(), &kl.algebra().weights());
    json list = json::array();
    for (auto const& w : elements) {
      json e;
      e["w"]     = to_json(w);
      e["terms"] = terms_json(kl.kl_element(w)->coords);
      list.push_back(e);
    }
    out["elements"] = list;
    return out;
  }

  inline json hconst_report(kl::KazhdanLusztig const& kl, Element const& x,
                            Element const& y) {
    json out   = header(kl.system(), &kl.algebra().weights());
    out["x"]   = to_json(x);
    out["y"]   = to_json(y);
    out["terms"] = terms_json(kl.h_constants(x, y));
    return out;
  }

  inline json afunction_report(kl::FiniteKL const& fk, kl::AFunction const& a) {
    auto const& g   = fk.group();
    json        out = header(g.system(), &fk.hecke().weights());
    json        list = json::array();
    for (ElementId z = 0; z < g.size(); ++z) {
      json e;
      e["z"]       = to_json(g.element(z));
      e["a"]       = a.values[z];
      e["witness"] = json::array({to_json(g.element(a.witness[z].first)),
                                  to_json(g.element(a.witness[z].second))});
      list.push_back(e);
    }
    out["values"] = list;
    return out;
  }

  // jtable.json: [x, y, z, c] means t_x t_y contains c t_z.
  inline json jtable_report(kl::JRing const& j) {
    auto const& g   = j.group();
    json        out = header(g.system(), &j.weights());
    json        rows = json::array();
    for (ElementId x = 0; x < g.size(); ++x) {
      for (ElementId y = 0; y < g.size(); ++y) {
        for (auto const& [z, c] : j.product(x, y)) {
          rows.push_back(json::array({to_json(g.element(x)), to_json(g.element(y)),
                                      to_json(g.element(z)), to_json(c)}));
        }
      }
    }
    json a = json::array();
    for (ElementId z = 0; z < g.size(); ++z) {
      a.push_back(json::array({to_json(g.element(z)), j.a().values[z]}));
    }
    out["a"]     = a;
    out["gamma"] = rows;
    return out;
  }

  inline json associativity_json(kl::JRing const&                j,
                                 kl::AssociativityReport const& r) {
    json out;
    out["passed"]     = r.passed;
    out["exhaustive"] = r.exhaustive;
    out["triples"]    = r.triples;
    if (!r.exhaustive) {
      out["seed"] = r.seed;
    }
    if (r.counterexample) {
      json ce = json::array();
      for (auto id : *r.counterexample) {
        ce.push_back(to_json(j.group().element(id)));
      }
      out["counterexample"] = ce;
    } else {
      out["counterexample"] = nullptr;
    }
    return out;
  }

  inline json unit_json(kl::JRing const& j, kl::UnitReport const& u) {
    json out;
    out["exists"] = u.exists;
    out["unique"] = u.unique;
    out["detail"] = u.detail;
    json terms    = json::array();
    for (auto const& [w, c] : u.unit) {
      terms.push_back(json::array({to_json(j.group().element(w)), to_json(c)}));
    }
    out["unit"] = terms;
    return out;
  }

  // jchecks.json; either part may be absent.
  inline json jchecks_report(kl::JRing const&                               j,
                             std::optional<kl::AssociativityReport> const& assoc,
                             std::optional<kl::UnitReport> const&          unit) {
    json out = header(j.group().system(), &j.weights());
    if (assoc) {
      out["associativity"] = associativity_json(j, *assoc);
    }
    if (unit) {
      out["unit"] = unit_json(j, *unit);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // positivity
  ////////////////////////////////////////////////////////////////////////////

  inline json trace_json(positivity::TraceReport const& r) {
    json j;
    j["class_id"]          = r.class_id;
    j["representative"]    = to_json(r.representative);
    j["class_size"]        = r.class_size;
    j["min_length"]        = r.min_length;
    j["min_length_count"]  = r.min_length_count;
    j["evaluated"]         = r.evaluated;
    j["n_poly"]            = to_json(r.n_poly);
    j["positive"]          = r.positive;
    j["centralizer_order"] = r.centralizer_order;
    j["checks"]            = {{"constant_on_min", r.checks.constant_on_min},
                              {"in_z_v2", r.checks.in_even},
                              {"centralizer_identity", r.checks.centralizer_match}};
    j["fixtures"] = {{"identity", r.is_identity},
                     {"coxeter", r.is_coxeter},
                     {"longest", r.contains_longest}};
    return j;
  }

  // positivity.json: an array of trace reports.
  inline json positivity_report(std::vector<positivity::TraceReport> const& rs) {
    json out = json::array();
    for (auto const& r : rs) {
      out.push_back(trace_json(r));
    }
    return out;
  }

  // class,size,min_length,positive,n_at_1
  inline std::string positivity_csv(std::vector<positivity::TraceReport> const& rs) {
    std::ostringstream os;
    os << "class,size,min_length,positive,n_at_1\n";
    for (auto const& r : rs) {
      // Words contain commas, so the class column is quoted.
      os << '"' << r.representative.to_string() << "\"," << r.class_size << ','
         << r.min_length << ',' << (r.positive ? "true" : "false") << ','
         << r.n_poly.eval_at_one() << '\n';
    }
    return os.str();
  }

  inline std::string positivity_summary(
      std::vector<positivity::TraceReport> const& rs) {
    std::string s = "positive classes:";
    for (auto const& r : rs) {
      if (r.positive) {
        s += " [" + r.representative.to_string() + "]";
        if (r.is_identity) {
          s += "(identity)";
        }
        if (r.is_coxeter) {
          s += "(coxeter)";
        }
      }
    }
    return s;
  }

  inline json weights_report(std::string const& label) {
    json out;
    out["type"]    = label;
    out["catalog"] = hecke::weight_catalog(label);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // KL table persistence (HX_CACHE_DIR)
  ////////////////////////////////////////////////////////////////////////////

  // kl_<type>_<weights>.json, or nothing when the cache is disabled.
  inline std::optional<std::filesystem::path> kl_cache_path(
      kl::KazhdanLusztig const& kl) {
    char const* dir = std::getenv("HX_CACHE_DIR");
    if (dir == nullptr || *dir == '\0' || !kl.system().label()) {
      return std::nullopt;
    }
    std::string name = "kl_" + *kl.system().label() + "_";
    for (int v : kl.algebra().weights().values()) {
      name += std::to_string(v) + "-";
    }
    name.back() = '.';
    name += "json";
    for (auto& ch : name) {
      if (ch == '~') {
        ch = 'x';
      }
    }
    return std::filesystem::path(dir) / name;
  }

  // Loads any cached c_w into the solver; returns how many were loaded.
  inline std::size_t load_kl_cache(kl::KazhdanLusztig const& kl) {
    auto path = kl_cache_path(kl);
    if (!path || !std::filesystem::exists(*path)) {
      return 0;
    }
    std::ifstream in(*path);
    json          j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("elements")
        || j.value("weights", json()) != json(kl.algebra().weights().values())) {
      return 0;
    }
    std::size_t n = 0;
    for (auto const& e : j["elements"]) {
      kl::KLElement el{element_from_json(kl.system(), e["w"]), {}};
      for (auto const& row : e["terms"]) {
        el.coords.emplace(element_from_json(kl.system(), row[0]),
                          poly_from_json(row[1]));
      }
      kl.insert(std::move(el));
      ++n;
    }
    return n;
  }

  inline void save_kl_cache(kl::KazhdanLusztig const&   kl,
                            std::vector<Element> const& elements) {
    auto path = kl_cache_path(kl);
    if (!path) {
      return;
    }
    std::filesystem::create_directories(path->parent_path());
    std::ofstream out(*path);
    out << kl_basis_report(kl, elements).dump() << '\n';
  }

}  // namespace hx::report

#endif  // HX_REPORT_HPP_
