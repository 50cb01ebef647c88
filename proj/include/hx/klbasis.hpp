#ifndef HX_KLBASIS_HPP_
#define HX_KLBASIS_HPP_

// Kazhdan-Lusztig basis {c_w} for arbitrary weight functions, the structure
// constants h_{x,y,z} (c_x c_y = sum_z h_{x,y,z} c_z), the a-function and the
// asymptotic ring J.
//
// c_w is the unique bar-invariant element with c_w - T_w in v^-1 H_{<=0}.
// Writing c_w = sum_y p_{y,w} T_y and bar(T_y) = sum_x r_{x,y} T_x,
// bar-invariance reads
//   p_{x,w} - bar(p_{x,w}) = sum_{x < y <= w} bar(p_{y,w}) r_{x,y},
// and since p_{x,w} has only negative exponents for x != w, it is the
// negative-exponent part of the right hand side. Solved downward from w.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hx/coxeter.hpp"
#include "hx/error.hpp"
#include "hx/finite_group.hpp"
#include "hx/hecke.hpp"
#include "hx/laurent.hpp"
#include "hx/parallel.hpp"

namespace hx::kl {

  using coxeter::Element;
  using coxeter::ElementId;
  using coxeter::FiniteGroup;
  using coxeter::Generator;
  using coxeter::System;
  using hecke::FiniteHecke;
  using hecke::HeckeAlgebra;
  using hecke::HeckeElement;
  using hecke::WeightFunction;

  // Coordinates in the c-basis.
  using CTerms = std::map<Element, LaurentPoly>;

  struct KLElement {
    Element                       top;
    std::map<Element, LaurentPoly> coords;  // p_{y,w}, support = {y <= w}

    HeckeElement as_hecke() const {
      HeckeElement h;
      for (auto const& [y, p] : coords) {
        h.add(y, p);
      }
      return h;
    }
  };

  // Negative-exponent part of p.
  inline LaurentPoly negative_part(LaurentPoly const& p) {
    LaurentPoly out;
    for (auto const& [e, c] : p.terms()) {
      if (e < 0) {
        out += LaurentPoly::monomial(c, e);
      }
    }
    return out;
  }

  class KazhdanLusztig {
   public:
    explicit KazhdanLusztig(HeckeAlgebra algebra)
        : _algebra(std::move(algebra)), _cache(std::make_shared<Cache>()) {}

    HeckeAlgebra const& algebra() const noexcept {
      return _algebra;
    }
    System const& system() const noexcept {
      return _algebra.system();
    }

    // The Bruhat interval [e, w], sorted. For a left descent s of w,
    // [e, w] = [e, sw] union s[e, sw] by the subword property.
    std::shared_ptr<std::vector<Element> const> interval(Element const& w) const {
      {
        std::lock_guard<std::mutex> lock(_cache->mutex);
        auto it = _cache->intervals.find(w);
        if (it != _cache->intervals.end()) {
          return it->second;
        }
      }
      std::vector<Element> out;
      if (w.is_identity()) {
        out.push_back(w);
      } else {
        Generator s    = w.word().front();
        auto      tail = interval(system().left_multiply(s, w));
        out            = *tail;
        for (auto const& x : *tail) {
          out.push_back(system().left_multiply(s, x));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
      }
      auto ptr = std::make_shared<std::vector<Element> const>(std::move(out));
      std::lock_guard<std::mutex> lock(_cache->mutex);
      return _cache->intervals.emplace(w, ptr).first->second;
    }

    std::shared_ptr<KLElement const> kl_element(Element const& w) const {
      {
        std::lock_guard<std::mutex> lock(_cache->mutex);
        auto it = _cache->elements.find(w);
        if (it != _cache->elements.end()) {
          return it->second;
        }
      }
      auto ptr = std::make_shared<KLElement const>(solve(w));
      std::lock_guard<std::mutex> lock(_cache->mutex);
      return _cache->elements.emplace(w, ptr).first->second;
    }

    // Seeds the cache, e.g. from a persisted table. The caller vouches for
    // the value.
    void insert(KLElement value) const {
      auto                        key = value.top;
      auto                        ptr = std::make_shared<KLElement const>(std::move(value));
      std::lock_guard<std::mutex> lock(_cache->mutex);
      _cache->elements.emplace(key, ptr);
    }

    HeckeElement c(Element const& w) const {
      return kl_element(w)->as_hecke();
    }

    // T-basis -> c-basis, peeling off the longest support element each time.
    CTerms to_c_basis(HeckeElement h) const {
      CTerms out;
      while (!h.is_zero()) {
        auto [z, coeff] = *h.terms().rbegin();
        out.emplace(z, coeff);
        for (auto const& [y, p] : kl_element(z)->coords) {
          h.add(y, coeff * p, 0, -1);
        }
      }
      return out;
    }

    HeckeElement from_c_basis(CTerms const& terms) const {
      HeckeElement out;
      for (auto const& [z, coeff] : terms) {
        out += coeff * c(z);
      }
      return out;
    }

    // h_{x,y,z} for all z.
    CTerms h_constants(Element const& x, Element const& y) const {
      return to_c_basis(_algebra.t_mul(c(x), c(y)));
    }

   private:
    KLElement solve(Element const& w) const {
      auto const&  elems = *interval(w);
      KLElement    out{w, {}};
      std::vector<LaurentPoly> p(elems.size());
      std::vector<std::shared_ptr<HeckeElement const>> bars(elems.size());
      for (std::size_t i = 0; i < elems.size(); ++i) {
        bars[i] = _algebra.bar_T(elems[i]);
      }
      std::size_t const top = elems.size() - 1;  // w is the longest
      p[top]                = 1;
      for (std::size_t k = top; k-- > 0;) {
        Element const& x = elems[k];
        LaurentPoly    q;
        for (std::size_t j = k + 1; j < elems.size(); ++j) {
          if (p[j].is_zero()) {
            continue;
          }
          LaurentPoly r = bars[j]->coefficient(x);
          if (!r.is_zero()) {
            q += p[j].bar() * r;
          }
        }
        if (!(q.bar() == -q)) {
          throw InvariantError("KL solve: right hand side not bar-antisymmetric"
                               " at "
                               + x.to_string());
        }
        p[k] = negative_part(q);
      }
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (!p[i].is_zero()) {
          out.coords.emplace(elems[i], std::move(p[i]));
        }
      }
      return out;
    }

    struct Cache {
      std::mutex                                                       mutex;
      std::map<Element, std::shared_ptr<std::vector<Element> const>> intervals;
      std::map<Element, std::shared_ptr<KLElement const>>             elements;
    };

    HeckeAlgebra           _algebra;
    std::shared_ptr<Cache> _cache;
  };

  ////////////////////////////////////////////////////////////////////////////
  // Finite groups: dense h-table scans, a-function, J
  ////////////////////////////////////////////////////////////////////////////

  using Sparse = std::vector<std::pair<ElementId, LaurentPoly>>;

  struct AFunction {
    std::vector<int>                               values;   // a(z) by id
    std::vector<std::pair<ElementId, ElementId>> witness;  // first (x, y)
  };

  // Element of J in the basis {t_w}: id -> integer coefficient.
  using JElement = std::map<ElementId, Integer>;

  struct AssociativityReport {
    bool                                    passed      = true;
    bool                                    exhaustive  = true;
    std::uint64_t                           triples     = 0;
    std::uint64_t                           seed        = 0;
    std::optional<std::array<ElementId, 3>> counterexample;
  };

  struct UnitReport {
    bool        exists = false;
    bool        unique = false;
    JElement    unit;
    std::string detail;
  };

  class JRing {
   public:
    using Row = std::vector<std::pair<ElementId, Integer>>;

    JRing(std::shared_ptr<FiniteGroup const> group, WeightFunction weights,
          AFunction a, std::vector<std::vector<Row>> table)
        : _group(std::move(group)),
          _weights(std::move(weights)),
          _a(std::move(a)),
          _table(std::move(table)) {}

    FiniteGroup const& group() const noexcept {
      return *_group;
    }
    WeightFunction const& weights() const noexcept {
      return _weights;
    }
    AFunction const& a() const noexcept {
      return _a;
    }
    std::size_t size() const noexcept {
      return _group->size();
    }

    // t_x t_y = sum_z gamma_{x,y,z^-1} t_z, as (z, coefficient) ascending z.
    Row const& product(ElementId x, ElementId y) const {
      return _table[x][y];
    }

    // Coefficient of t_z in t_x t_y.
    Integer structure(ElementId x, ElementId y, ElementId z) const {
      for (auto const& [u, c] : _table[x][y]) {
        if (u == z) {
          return c;
        }
      }
      return 0;
    }

    // gamma_{x,y,z}, i.e. the coefficient of t_{z^-1} in t_x t_y.
    Integer gamma(ElementId x, ElementId y, ElementId z) const {
      return structure(x, y, _group->inverse(z));
    }

    JElement multiply(JElement const& a, JElement const& b) const {
      JElement out;
      for (auto const& [x, cx] : a) {
        for (auto const& [y, cy] : b) {
          for (auto const& [z, g] : _table[x][y]) {
            out[z] += cx * cy * g;
          }
        }
      }
      std::erase_if(out, [](auto const& kv) { return kv.second == 0; });
      return out;
    }

    static JElement basis(ElementId w) {
      return JElement{{w, Integer(1)}};
    }

    // (t_x t_y) t_z == t_x (t_y t_z) for all triples when |W| <= threshold
    // or exhaustive is forced, else for `samples` triples drawn from a
    // mt19937_64 seeded with `seed`.
    AssociativityReport check_associativity(bool          exhaustive = false,
                                            std::uint64_t seed       = 1,
                                            std::size_t   samples    = 20000,
                                            std::size_t threshold = 400) const {
      AssociativityReport rep;
      rep.seed       = seed;
      std::size_t n  = size();
      rep.exhaustive = exhaustive || n <= threshold;
      auto check     = [&](ElementId x, ElementId y, ElementId z) {
        ++rep.triples;
        JElement lhs;
        for (auto const& [u, c] : _table[x][y]) {
          for (auto const& [w, d] : _table[u][z]) {
            lhs[w] += c * d;
          }
        }
        JElement rhs;
        for (auto const& [u, c] : _table[y][z]) {
          for (auto const& [w, d] : _table[x][u]) {
            rhs[w] += c * d;
          }
        }
        std::erase_if(lhs, [](auto const& kv) { return kv.second == 0; });
        std::erase_if(rhs, [](auto const& kv) { return kv.second == 0; });
        if (lhs != rhs && rep.passed) {
          rep.passed         = false;
          rep.counterexample = std::array<ElementId, 3>{x, y, z};
        }
      };
      if (rep.exhaustive) {
        for (ElementId x = 0; x < n; ++x) {
          for (ElementId y = 0; y < n; ++y) {
            for (ElementId z = 0; z < n; ++z) {
              check(x, y, z);
            }
          }
        }
      } else {
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < samples; ++k) {
          auto x = static_cast<ElementId>(rng() % n);
          auto y = static_cast<ElementId>(rng() % n);
          auto z = static_cast<ElementId>(rng() % n);
          check(x, y, z);
        }
      }
      return rep;
    }

    // Solves u t_w = t_w = t_w u for all w over Q, then checks integrality.
    UnitReport find_unit() const {
      std::size_t const n = size();
      // Equation rows: n coefficients followed by the right hand side.
      std::vector<std::vector<Rational>> rows;
      auto add_rows = [&](bool left) {
        for (ElementId w = 0; w < n; ++w) {
          std::map<ElementId, std::vector<Rational>> eq;
          auto row_for = [&](ElementId z) -> std::vector<Rational>& {
            auto it = eq.find(z);
            if (it == eq.end()) {
              it = eq.emplace(z, std::vector<Rational>(n + 1, Rational(0))).first;
            }
            return it->second;
          };
          row_for(w)[n] = 1;
          for (ElementId u = 0; u < n; ++u) {
            auto const& prod = left ? _table[u][w] : _table[w][u];
            for (auto const& [z, c] : prod) {
              row_for(z)[u] += Rational(c);
            }
          }
          for (auto& [z, r] : eq) {
            rows.push_back(std::move(r));
          }
        }
      };
      add_rows(true);
      add_rows(false);

      UnitReport rep;
      // Gauss-Jordan over Q.
      std::vector<std::size_t>           pivot_cols;
      std::vector<std::vector<Rational>> echelon;
      for (auto& row : rows) {
        for (std::size_t k = 0; k < echelon.size(); ++k) {
          Rational f = row[pivot_cols[k]];
          if (f != 0) {
            for (std::size_t j = 0; j <= n; ++j) {
              row[j] -= f * echelon[k][j];
            }
          }
        }
        std::size_t col = 0;
        while (col < n && row[col] == 0) {
          ++col;
        }
        if (col == n) {
          if (row[n] != 0) {
            rep.detail = "no unit: linear system is inconsistent";
            return rep;
          }
          continue;
        }
        Rational inv = Rational(1) / row[col];
        for (auto& x : row) {
          x *= inv;
        }
        for (auto& b : echelon) {
          Rational f = b[col];
          if (f != 0) {
            for (std::size_t j = 0; j <= n; ++j) {
              b[j] -= f * row[j];
            }
          }
        }
        echelon.push_back(std::move(row));
        pivot_cols.push_back(col);
      }
      std::vector<Rational> solution(n, Rational(0));
      for (std::size_t k = 0; k < echelon.size(); ++k) {
        solution[pivot_cols[k]] = echelon[k][n];
      }
      rep.unique = echelon.size() == n;
      for (ElementId w = 0; w < n; ++w) {
        Rational const& x = solution[w];
        if (x == 0) {
          continue;
        }
        if (boost::multiprecision::denominator(x) != 1) {
          rep.detail = "no unit over Z: the rational solution is not integral";
          rep.unit.clear();
          return rep;
        }
        rep.unit.emplace(w, boost::multiprecision::numerator(x));
      }
      // Confirm against the ring itself.
      for (ElementId w = 0; w < n; ++w) {
        if (multiply(rep.unit, basis(w)) != basis(w)
            || multiply(basis(w), rep.unit) != basis(w)) {
          throw InvariantError("J unit solver returned a non-unit");
        }
      }
      rep.exists = true;
      rep.detail = rep.unique ? "unique two-sided unit"
                              : "two-sided unit (system underdetermined)";
      return rep;
    }

   private:
    std::shared_ptr<FiniteGroup const> _group;
    WeightFunction                     _weights;
    AFunction                          _a;
    std::vector<std::vector<Row>>      _table;  // [x][y] -> t_x t_y
  };

  class FiniteKL {
   public:
    FiniteKL(std::shared_ptr<FiniteGroup const> group, WeightFunction weights,
             unsigned jobs = 1)
        : _hecke(group, weights),
          _kl(HeckeAlgebra(group->system(), weights)),
          _jobs(jobs) {
      build();
    }

    // Reuses an existing (possibly pre-seeded) generic solver.
    FiniteKL(std::shared_ptr<FiniteGroup const> group, KazhdanLusztig kl,
             unsigned jobs = 1)
        : _hecke(group, kl.algebra().weights()), _kl(std::move(kl)), _jobs(jobs) {
      build();
    }

    FiniteGroup const& group() const noexcept {
      return _hecke.group();
    }
    FiniteHecke const& hecke() const noexcept {
      return _hecke;
    }
    KazhdanLusztig const& generic() const noexcept {
      return _kl;
    }
    std::size_t size() const noexcept {
      return _hecke.size();
    }

    // c_w as sparse (id, p_{y,w}) pairs, ascending id.
    Sparse const& c(ElementId w) const {
      return _c[w];
    }

    FiniteHecke::Vector c_dense(ElementId w) const {
      FiniteHecke::Vector out = _hecke.zero();
      for (auto const& [y, p] : _c[w]) {
        out[y] = p;
      }
      return out;
    }

    // Decomposes a dense T-basis vector into the c-basis; consumes it.
    Sparse to_c_basis(FiniteHecke::Vector h) const {
      Sparse out;
      for (std::size_t k = size(); k-- > 0;) {
        auto z = static_cast<ElementId>(k);
        if (h[z].is_zero()) {
          continue;
        }
        LaurentPoly coeff = h[z];
        for (auto const& [y, p] : _c[z]) {
          h[y].add_scaled(coeff * p, 0, -1);
        }
        out.emplace_back(z, std::move(coeff));
      }
      std::reverse(out.begin(), out.end());
      return out;
    }

    // Calls visit(x, h_{x,y,.}) for every x, for one fixed y.
    template <typename Visit>
    void h_row(ElementId y, Visit&& visit) const {
      std::size_t const                n = size();
      std::vector<FiniteHecke::Vector> tc(n);  // tc[u] = T_u c_y
      tc[0] = c_dense(y);
      for (ElementId u = 1; u < n; ++u) {
        Generator s = group().element(u).word().front();
        tc[u]       = tc[group().left(s, u)];
        _hecke.left_mul_generator(s, tc[u]);
      }
      for (ElementId x = 0; x < n; ++x) {
        FiniteHecke::Vector prod = _hecke.zero();
        for (auto const& [u, p] : _c[x]) {
          for (ElementId z = 0; z < n; ++z) {
            if (!tc[u][z].is_zero()) {
              prod[z] += p * tc[u][z];
            }
          }
        }
        visit(x, to_c_basis(std::move(prod)));
      }
    }

    Sparse h_constants(ElementId x, ElementId y) const {
      FiniteHecke::Vector cy = c_dense(y);
      FiniteHecke::Vector prod = _hecke.zero();
      for (auto const& [u, p] : _c[x]) {
        FiniteHecke::Vector t = cy;
        _hecke.left_mul_T(u, t);
        for (ElementId z = 0; z < size(); ++z) {
          if (!t[z].is_zero()) {
            prod[z] += p * t[z];
          }
        }
      }
      return to_c_basis(std::move(prod));
    }

    // a(z) = max_{x,y} deg h_{x,y,z}, with the first attaining (x, y) in
    // lexicographic order. Rows are scanned in parallel; only per-z maxima
    // are kept.
    AFunction a_function() const {
      std::size_t const n = size();
      struct Best {
        int       deg = minus_infinity;
        ElementId x   = 0;
      };
      std::vector<std::vector<Best>> rows(n);
      parallel_for(n, _jobs, [&](std::size_t yi) {
        auto& best = rows[yi];
        best.assign(n, Best{});
        h_row(static_cast<ElementId>(yi), [&](ElementId x, Sparse const& h) {
          for (auto const& [z, p] : h) {
            if (p.degree() > best[z].deg) {
              best[z] = {p.degree(), x};
            }
          }
        });
      });
      AFunction out;
      out.values.assign(n, minus_infinity);
      out.witness.assign(n, {0, 0});
      for (ElementId y = 0; y < n; ++y) {
        for (ElementId z = 0; z < n; ++z) {
          Best const& b = rows[y][z];
          if (b.deg == minus_infinity) {
            continue;
          }
          auto cand = std::make_pair(b.x, y);
          if (b.deg > out.values[z]
              || (b.deg == out.values[z] && cand < out.witness[z])) {
            out.values[z]  = b.deg;
            out.witness[z] = cand;
          }
        }
      }
      for (ElementId z = 0; z < n; ++z) {
        if (out.values[z] < 0) {
          throw InvariantError("a-function negative or undefined at "
                               + group().element(z).to_string());
        }
      }
      return out;
    }

    JRing j_ring() const {
      AFunction                             a = a_function();
      std::size_t const                     n = size();
      std::vector<std::vector<JRing::Row>> table(n, std::vector<JRing::Row>(n));
      std::vector<std::vector<JRing::Row>> by_y(n);
      parallel_for(n, _jobs, [&](std::size_t yi) {
        auto& col = by_y[yi];
        col.assign(n, {});
        h_row(static_cast<ElementId>(yi), [&](ElementId x, Sparse const& h) {
          for (auto const& [z, p] : h) {
            if (p.degree() > a.values[z]) {
              throw InvariantError("deg h exceeds a(z)");
            }
            Integer g = p.coeff(a.values[z]);
            if (g != 0) {
              col[x].emplace_back(z, std::move(g));
            }
          }
        });
      });
      for (ElementId x = 0; x < n; ++x) {
        for (ElementId y = 0; y < n; ++y) {
          table[x][y] = std::move(by_y[y][x]);
        }
      }
      return JRing(_hecke.group_ptr(), _hecke.weights(), std::move(a),
                   std::move(table));
    }

   private:
    void build() {
      std::size_t const n = size();
      _c.assign(n, {});
      // The generic solver shares its bar cache; fill it sequentially, longest
      // first pulls every shorter bar(T_y) in one pass.
      for (ElementId w = 0; w < n; ++w) {
        auto el = _kl.kl_element(group().element(w));
        for (auto const& [y, p] : el->coords) {
          _c[w].emplace_back(group().index(y), p);
        }
        std::sort(_c[w].begin(), _c[w].end(),
                  [](auto const& a, auto const& b) { return a.first < b.first; });
      }
    }

    FiniteHecke         _hecke;
    KazhdanLusztig      _kl;
    unsigned            _jobs;
    std::vector<Sparse> _c;
  };

}  // namespace hx::kl

#endif  // HX_KLBASIS_HPP_
