#ifndef HX_HECKE_HPP_
#define HX_HECKE_HPP_

// The Iwahori-Hecke algebra H of a Coxeter system with a weight function L,
// over A = Z[v, v^-1], in its standard basis {T_w}.
//
// Two backends share one set of rules:
//   T_s T_w = T_sw                          if |sw| > |w|
//   T_s T_w = T_sw + (v^L(s) - v^-L(s)) T_w  if |sw| < |w|
// HeckeAlgebra works on sparse maps keyed by Element and handles any
// (possibly infinite) system. FiniteHecke works on dense vectors indexed by
// the ids of a FiniteGroup and is what the large scans use.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hx/coxeter.hpp"
#include "hx/error.hpp"
#include "hx/finite_group.hpp"
#include "hx/laurent.hpp"
#include "hx/parallel.hpp"

namespace hx::hecke {

  using coxeter::Element;
  using coxeter::ElementId;
  using coxeter::FiniteGroup;
  using coxeter::Generator;
  using coxeter::System;

  ////////////////////////////////////////////////////////////////////////////
  // Weight functions
  ////////////////////////////////////////////////////////////////////////////

  class WeightFunction {
   public:
    // Values L(s_i) per generator. L must be positive, and constant on
    // generators joined by an odd bond (the braid relation forces it).
    static WeightFunction make(System const& system, std::vector<int> values) {
      if (values.size() != system.rank()) {
        throw UsageError("weight function needs " + std::to_string(system.rank())
                         + " values, got " + std::to_string(values.size()));
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1) {
          throw UsageError("weight L(s_" + std::to_string(i)
                           + ") must be positive");
        }
        for (std::size_t j = 0; j < i; ++j) {
          int m = system.m(static_cast<Generator>(i), static_cast<Generator>(j));
          if (m != coxeter::infinity && m % 2 == 1 && values[i] != values[j]) {
            throw UsageError("weights of s_" + std::to_string(j) + " and s_"
                             + std::to_string(i)
                             + " must agree (odd bond order "
                             + std::to_string(m) + ")");
          }
        }
      }
      WeightFunction w;
      w._values = std::move(values);
      return w;
    }

    // L = | |
    static WeightFunction equal(System const& system) {
      return make(system, std::vector<int>(system.rank(), 1));
    }

    int operator()(Generator s) const {
      return _values[static_cast<std::size_t>(s)];
    }

    // L(w), summed along the canonical reduced word.
    int of(Element const& w) const {
      int total = 0;
      for (auto s : w.word()) {
        total += (*this)(s);
      }
      return total;
    }

    std::vector<int> const& values() const noexcept {
      return _values;
    }

    bool is_equal_parameter() const {
      return std::all_of(_values.begin(), _values.end(),
                         [](int x) { return x == 1; });
    }

    std::string to_string() const {
      std::string s;
      for (std::size_t i = 0; i < _values.size(); ++i) {
        s += (i ? "," : "") + std::to_string(_values[i]);
      }
      return s;
    }

    friend bool operator==(WeightFunction const&,
                           WeightFunction const&) = default;

   private:
    std::vector<int> _values;
  };

  inline WeightFunction make_weight(System const&    system,
                                    std::vector<int> values) {
    return WeightFunction::make(system, std::move(values));
  }

  // Admissible weight tuples for the two affine types where they are listed
  // explicitly. Empty for every other type.
  inline std::vector<std::vector<int>> weight_catalog(std::string const& label) {
    if (label == "~F4") {
      return {{1, 1, 1, 1, 1}, {1, 1, 1, 2, 2}, {2, 2, 2, 1, 1}, {1, 1, 1, 4, 4}};
    }
    if (label == "~G2") {
      return {{1, 1, 1}, {1, 1, 3}, {3, 3, 1}, {1, 1, 9}};
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////////
  // Sparse elements
  ////////////////////////////////////////////////////////////////////////////

  class HeckeElement {
   public:
    using Terms = std::map<Element, LaurentPoly>;

    HeckeElement() = default;

    static HeckeElement basis(Element w, LaurentPoly c = 1) {
      HeckeElement h;
      h.add(w, c);
      return h;
    }

    Terms const& terms() const noexcept {
      return _terms;
    }
    bool is_zero() const noexcept {
      return _terms.empty();
    }
    std::size_t size() const noexcept {
      return _terms.size();
    }

    LaurentPoly coefficient(Element const& w) const {
      auto it = _terms.find(w);
      return it == _terms.end() ? LaurentPoly() : it->second;
    }

    // this += c * v^shift * T_w, scaled by sign
    void add(Element const& w, LaurentPoly const& c, int shift = 0,
             int sign = 1) {
      if (c.is_zero()) {
        return;
      }
      auto [it, inserted] = _terms.try_emplace(w);
      it->second.add_scaled(c, shift, sign);
      if (it->second.is_zero()) {
        _terms.erase(it);
      }
    }

    HeckeElement& operator+=(HeckeElement const& o) {
      for (auto const& [w, c] : o._terms) {
        add(w, c);
      }
      return *this;
    }
    HeckeElement& operator-=(HeckeElement const& o) {
      for (auto const& [w, c] : o._terms) {
        add(w, c, 0, -1);
      }
      return *this;
    }
    friend HeckeElement operator+(HeckeElement a, HeckeElement const& b) {
      return a += b;
    }
    friend HeckeElement operator-(HeckeElement a, HeckeElement const& b) {
      return a -= b;
    }
    friend HeckeElement operator*(LaurentPoly const& c, HeckeElement h) {
      if (c.is_zero()) {
        return HeckeElement();
      }
      for (auto& [w, p] : h._terms) {
        p = c * p;
      }
      return h;
    }

    friend bool operator==(HeckeElement const&, HeckeElement const&) = default;

   private:
    Terms _terms;
  };

  struct FProbe {
    int         n_emp = 0;
    Element     x, y, z;  // attaining triple
    std::size_t elements = 0;
    std::size_t pairs    = 0;
  };

  ////////////////////////////////////////////////////////////////////////////
  // Sparse backend
  ////////////////////////////////////////////////////////////////////////////

  class HeckeAlgebra {
   public:
    HeckeAlgebra(System system, WeightFunction weights)
        : _system(std::move(system)),
          _weights(std::move(weights)),
          _bar_cache(std::make_shared<BarCache>()) {
      if (_weights.values().size() != _system.rank()) {
        throw UsageError("weight function does not match the system");
      }
      for (std::size_t s = 0; s < _system.rank(); ++s) {
        _xi.push_back(v_minus_inverse(_weights(static_cast<Generator>(s))));
      }
    }

    System const& system() const noexcept {
      return _system;
    }
    WeightFunction const& weights() const noexcept {
      return _weights;
    }

    HeckeElement T(Element const& w) const {
      return HeckeElement::basis(w);
    }
    HeckeElement one() const {
      return HeckeElement::basis(_system.identity());
    }

    // v^L(s) - v^-L(s)
    LaurentPoly const& xi(Generator s) const {
      return _xi[static_cast<std::size_t>(s)];
    }

    // T_s * h
    HeckeElement left_mul_generator(Generator s, HeckeElement const& h) const {
      _system.check_generator(s);
      HeckeElement out;
      int const    L = _weights(s);
      for (auto const& [w, c] : h.terms()) {
        auto mu      = _system.action(w.word());
        bool descent = mu[static_cast<std::size_t>(s)] < 0;
        _system.fire(mu, s);
        out.add(_system.from_action(std::move(mu)), c);
        if (descent) {
          out.add(w, c, L, 1);
          out.add(w, c, -L, -1);
        }
      }
      return out;
    }

    // h * T_s
    HeckeElement right_mul_generator(HeckeElement const& h, Generator s) const {
      _system.check_generator(s);
      HeckeElement out;
      int const    L = _weights(s);
      for (auto const& [w, c] : h.terms()) {
        Element ws = _system.right_multiply(w, s);
        out.add(ws, c);
        if (ws.length() < w.length()) {
          out.add(w, c, L, 1);
          out.add(w, c, -L, -1);
        }
      }
      return out;
    }

    // T_w * h
    HeckeElement left_mul_T(Element const& w, HeckeElement h) const {
      for (auto it = w.word().rbegin(); it != w.word().rend(); ++it) {
        h = left_mul_generator(*it, h);
      }
      return h;
    }

    // h * T_w
    HeckeElement right_mul_T(HeckeElement h, Element const& w) const {
      for (auto s : w.word()) {
        h = right_mul_generator(h, s);
      }
      return h;
    }

    HeckeElement t_mul(HeckeElement const& a, HeckeElement const& b) const {
      HeckeElement out;
      for (auto const& [u, c] : a.terms()) {
        out += c * left_mul_T(u, b);
      }
      return out;
    }

    // bar(T_w) = T_{w^-1}^{-1}, from bar(T_s) = T_s - xi_s and
    // bar(T_sw) = bar(T_s) bar(T_w) when |sw| = |w| + 1. Memoized.
    std::shared_ptr<HeckeElement const> bar_T(Element const& w) const {
      {
        std::lock_guard<std::mutex> lock(_bar_cache->mutex);
        auto it = _bar_cache->values.find(w);
        if (it != _bar_cache->values.end()) {
          return it->second;
        }
      }
      HeckeElement value;
      if (w.is_identity()) {
        value = one();
      } else {
        Generator s    = w.word().front();
        auto      tail = bar_T(_system.left_multiply(s, w));
        value          = left_mul_generator(s, *tail);
        HeckeElement correction;
        for (auto const& [u, c] : tail->terms()) {
          correction.add(u, xi(s) * c);
        }
        value -= correction;
      }
      auto ptr = std::make_shared<HeckeElement const>(std::move(value));
      std::lock_guard<std::mutex> lock(_bar_cache->mutex);
      // Write-once: a concurrent fill of the same key computed the same value.
      return _bar_cache->values.emplace(w, ptr).first->second;
    }

    HeckeElement bar(HeckeElement const& h) const {
      HeckeElement out;
      for (auto const& [w, c] : h.terms()) {
        out += c.bar() * *bar_T(w);
      }
      return out;
    }

    // f_{x,y,z}: T_x T_y = sum_z f_{x,y,z} T_z
    HeckeElement::Terms f_constants(Element const& x, Element const& y) const {
      return left_mul_T(x, T(y)).terms();
    }

    // Largest degree of f_{x,y,z} over |x|, |y| <= radius. No radius means
    // the whole (finite) group. Ties go to the first pair in enumeration
    // order, then the smallest z.
    FProbe f_bound_probe(std::optional<std::size_t> radius,
                         unsigned                   jobs = 1) const {
      std::vector<Element> elems = _system.enumerate(radius);
      struct Best {
        int     deg = minus_infinity;
        Element y, z;
      };
      std::vector<Best> per_x(elems.size());
      parallel_for(elems.size(), jobs, [&](std::size_t i) {
        Best& best = per_x[i];
        for (auto const& y : elems) {
          for (auto const& [z, f] : f_constants(elems[i], y)) {
            if (f.degree() > best.deg) {
              best = {f.degree(), y, z};
            }
          }
        }
      });
      FProbe out;
      out.elements = elems.size();
      out.pairs    = elems.size() * elems.size();
      out.n_emp    = minus_infinity;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (per_x[i].deg > out.n_emp) {
          out.n_emp = per_x[i].deg;
          out.x     = elems[i];
          out.y     = per_x[i].y;
          out.z     = per_x[i].z;
        }
      }
      return out;
    }

    // Coefficientwise v -> c; c must be nonzero.
    std::map<Element, Rational> specialize(HeckeElement const& h,
                                           Rational const&     c) const {
      if (c == 0) {
        throw UsageError("specialization point must be nonzero");
      }
      std::map<Element, Rational> out;
      for (auto const& [w, p] : h.terms()) {
        Rational value = p.eval(c);
        if (value != 0) {
          out.emplace(w, value);
        }
      }
      return out;
    }

   private:
    struct BarCache {
      std::mutex                                              mutex;
      std::map<Element, std::shared_ptr<HeckeElement const>> values;
    };

    System                    _system;
    WeightFunction            _weights;
    std::vector<LaurentPoly>  _xi;
    std::shared_ptr<BarCache> _bar_cache;
  };

  ////////////////////////////////////////////////////////////////////////////
  // Dense backend for finite groups
  ////////////////////////////////////////////////////////////////////////////

  class FiniteHecke {
   public:
    using Vector = std::vector<LaurentPoly>;

    FiniteHecke(std::shared_ptr<FiniteGroup const> group, WeightFunction weights)
        : _group(std::move(group)), _weights(std::move(weights)) {
      if (_weights.values().size() != _group->rank()) {
        throw UsageError("weight function does not match the system");
      }
    }

    FiniteGroup const& group() const noexcept {
      return *_group;
    }
    std::shared_ptr<FiniteGroup const> const& group_ptr() const noexcept {
      return _group;
    }
    WeightFunction const& weights() const noexcept {
      return _weights;
    }
    std::size_t size() const noexcept {
      return _group->size();
    }

    Vector zero() const {
      return Vector(size());
    }
    Vector basis(ElementId w) const {
      Vector h(size());
      h[w] = 1;
      return h;
    }

    // h <- T_s h, in place. Pairs {w, sw} with |sw| > |w| mix as
    // (a, b) -> (b, a + xi b).
    void left_mul_generator(Generator s, Vector& h) const {
      int const L = _weights(s);
      for (ElementId w = 0; w < size(); ++w) {
        ElementId sw = _group->left(s, w);
        if (sw < w) {
          continue;
        }
        mix(h[w], h[sw], L);
      }
    }

    // h <- h T_s, in place.
    void right_mul_generator(Vector& h, Generator s) const {
      int const L = _weights(s);
      for (ElementId w = 0; w < size(); ++w) {
        ElementId ws = _group->right(w, s);
        if (ws < w) {
          continue;
        }
        mix(h[w], h[ws], L);
      }
    }

    void left_mul_T(ElementId w, Vector& h) const {
      auto const& word = _group->element(w).word();
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        left_mul_generator(*it, h);
      }
    }

    void right_mul_T(Vector& h, ElementId w) const {
      for (auto s : _group->element(w).word()) {
        right_mul_generator(h, s);
      }
    }

    Vector t_mul(Vector const& a, Vector const& b) const {
      Vector out = zero();
      for (ElementId u = 0; u < size(); ++u) {
        if (a[u].is_zero()) {
          continue;
        }
        Vector tb = b;
        left_mul_T(u, tb);
        for (ElementId z = 0; z < size(); ++z) {
          if (!tb[z].is_zero()) {
            out[z] += a[u] * tb[z];
          }
        }
      }
      return out;
    }

    HeckeElement to_sparse(Vector const& h) const {
      HeckeElement out;
      for (ElementId w = 0; w < size(); ++w) {
        out.add(_group->element(w), h[w]);
      }
      return out;
    }

    Vector from_sparse(HeckeElement const& h) const {
      Vector out = zero();
      for (auto const& [w, c] : h.terms()) {
        out[_group->index(w)] = c;
      }
      return out;
    }

   private:
    static void mix(LaurentPoly& a, LaurentPoly& b, int L) {
      if (a.is_zero() && b.is_zero()) {
        return;
      }
      std::swap(a, b);
      // now a holds the old b, b the old a
      b.add_scaled(a, L, 1);
      b.add_scaled(a, -L, -1);
    }

    std::shared_ptr<FiniteGroup const> _group;
    WeightFunction                     _weights;
  };

}  // namespace hx::hecke

#endif  // HX_HECKE_HPP_
