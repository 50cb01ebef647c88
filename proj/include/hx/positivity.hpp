#ifndef HX_POSITIVITY_HPP_
#define HX_POSITIVITY_HPP_

// Trace N^w of h -> v^{2|w|} T_w h T_{w^-1} on H (equal parameters, finite
// W), and the positivity classification of conjugacy classes: C is positive
// when N^w lies in N[v^2] for w in C_min.
//
// Every class report is self-checked: N^w must be the same polynomial for
// all evaluated w in C_min, lie in Z[v^2], and evaluate at v = 1 to the
// centralizer order |W| / |C|. A failure raises InvariantError.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hx/coxeter.hpp"
#include "hx/error.hpp"
#include "hx/finite_group.hpp"
#include "hx/hecke.hpp"
#include "hx/laurent.hpp"
#include "hx/parallel.hpp"

namespace hx::positivity {

  using coxeter::ConjugacyClass;
  using coxeter::Element;
  using coxeter::ElementId;
  using coxeter::FiniteGroup;
  using coxeter::System;
  using hecke::FiniteHecke;
  using hecke::WeightFunction;

  struct TraceChecks {
    bool constant_on_min   = false;
    bool in_even           = false;
    bool centralizer_match = false;
  };

  struct TraceReport {
    std::size_t   class_id = 0;
    Element       representative;
    std::size_t   class_size       = 0;
    std::size_t   min_length       = 0;
    std::size_t   min_length_count = 0;  // |C_min|
    std::size_t   evaluated        = 0;  // members of C_min traced
    LaurentPoly   n_poly;
    bool          positive          = false;
    std::uint64_t centralizer_order = 0;
    TraceChecks   checks;
    // Spot-check fixtures.
    bool is_identity      = false;
    bool is_coxeter       = false;
    bool contains_longest = false;
  };

  struct Options {
    unsigned jobs = 1;
    // Members of C_min traced per class; all when unset.
    std::optional<std::size_t>               member_limit;
    // Once past the deadline, each class traces only its first C_min member.
    // classify_positive sets the deadline from time_budget (seconds).
    std::optional<double>                                time_budget;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::function<void(std::string const&)> progress;
  };

  inline void require_equal_parameters(FiniteHecke const& hecke) {
    if (!hecke.weights().is_equal_parameter()) {
      throw GatingError("trace positivity is defined for equal parameters "
                        "only, got weights "
                        + hecke.weights().to_string());
    }
  }

  // N^w = sum_x [T_x] v^{2|w|} T_w T_x T_{w^-1}. The products are built one
  // basis vector at a time; the |W| x |W| operator is never formed.
  inline LaurentPoly n_trace(FiniteHecke const& hecke, ElementId w,
                             unsigned jobs = 1) {
    require_equal_parameters(hecke);
    FiniteGroup const&       g   = hecke.group();
    ElementId const          inv = g.inverse(w);
    std::vector<LaurentPoly> diag(g.size());
    parallel_for(g.size(), jobs, [&](std::size_t xi) {
      auto                x = static_cast<ElementId>(xi);
      FiniteHecke::Vector h = hecke.basis(x);
      hecke.left_mul_T(w, h);
      hecke.right_mul_T(h, inv);
      diag[xi] = std::move(h[x]);
    });
    LaurentPoly total;
    for (auto const& d : diag) {
      total += d;
    }
    return total.shifted(2 * static_cast<int>(g.length(w)));
  }

  inline TraceReport class_report(FiniteHecke const&    hecke,
                                  ConjugacyClass const& cls,
                                  std::size_t           class_id,
                                  Options const&        opts = {}) {
    require_equal_parameters(hecke);
    FiniteGroup const& g = hecke.group();
    TraceReport        rep;
    rep.class_id          = class_id;
    rep.representative    = cls.representative;
    rep.class_size        = cls.size();
    rep.min_length        = cls.min_length();
    rep.min_length_count  = cls.min_length_set.size();
    rep.centralizer_order = cls.centralizer_order;

    std::size_t count = cls.min_length_set.size();
    if (opts.member_limit) {
      count = std::min(count, std::max<std::size_t>(1, *opts.member_limit));
    }
    std::string const where = g.system().name() + " class "
                              + std::to_string(class_id) + " ("
                              + cls.representative.to_string() + ")";
    std::size_t k = 0;
    for (; k < count; ++k) {
      if (k > 0 && opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
        break;
      }
      LaurentPoly n = n_trace(hecke, g.index(cls.min_length_set[k]), opts.jobs);
      if (k == 0) {
        rep.n_poly = std::move(n);
      } else if (!(n == rep.n_poly)) {
        throw InvariantError("N^w not constant on C_min for " + where + ": "
                             + rep.n_poly.to_string() + " vs " + n.to_string()
                             + " at " + cls.min_length_set[k].to_string());
      }
    }
    rep.evaluated              = k;
    rep.checks.constant_on_min = true;

    if (!rep.n_poly.in_cone(Cone::even())) {
      throw InvariantError("N^w not in Z[v^2] for " + where + ": "
                           + rep.n_poly.to_string());
    }
    rep.checks.in_even = true;
    if (rep.n_poly.eval_at_one() != rep.centralizer_order) {
      throw InvariantError("N^w(1) differs from the centralizer order for "
                           + where);
    }
    rep.checks.centralizer_match = true;
    rep.positive = rep.n_poly.in_cone(Cone::even_nonnegative());
    return rep;
  }

  inline std::vector<TraceReport> classify_positive(
      std::shared_ptr<FiniteGroup const> group, Options opts = {}) {
    if (opts.time_budget && !opts.deadline) {
      opts.deadline = std::chrono::steady_clock::now()
                      + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(*opts.time_budget));
    }
    FiniteHecke hecke(group, WeightFunction::equal(group->system()));
    auto        classes = coxeter::conjugacy_classes(*group);

    std::optional<Element> coxeter_element;
    if (group->system().is_irreducible()) {
      coxeter_element = coxeter::special_elements(*group).coxeter_element;
    }
    Element const longest = group->element(group->longest());

    std::vector<TraceReport> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (opts.progress) {
        opts.progress("class " + std::to_string(i + 1) + "/"
                      + std::to_string(classes.size()) + ": |C_min| = "
                      + std::to_string(classes[i].min_length_set.size()));
      }
      TraceReport rep  = class_report(hecke, classes[i], i, opts);
      rep.is_identity  = classes[i].representative.is_identity();
      rep.is_coxeter   = coxeter_element && classes[i].contains(*coxeter_element);
      rep.contains_longest = classes[i].contains(longest);
      out.push_back(std::move(rep));
    }
    return out;
  }

  inline std::vector<TraceReport> classify_positive(System const&  system,
                                                    Options const& opts = {}) {
    return classify_positive(std::make_shared<FiniteGroup const>(system), opts);
  }

}  // namespace hx::positivity

#endif  // HX_POSITIVITY_HPP_
