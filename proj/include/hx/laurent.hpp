#ifndef HX_LAURENT_HPP_
#define HX_LAURENT_HPP_

// Integer Laurent polynomials in one variable v, i.e. the ring Z[v, v^-1].
//
// Storage is dense over the support interval [low_degree, degree]. The first
// and last stored coefficients are always nonzero, so structural equality is
// mathematical equality. The zero polynomial stores nothing.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hx/error.hpp"

namespace hx {

  using Integer  = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  // Degree of the zero polynomial.
  inline constexpr int minus_infinity = INT_MIN;
  // Lowest exponent of the zero polynomial.
  inline constexpr int plus_infinity = INT_MAX;

  // The subsets of A = Z[v, v^-1] that membership tests quantify over.
  class Cone {
   public:
    enum class Kind { shifted, even, even_nonnegative };

    // Z[v^-1]
    static Cone nonpositive() {
      return Cone(Kind::shifted, 0);
    }
    // v^a Z[v^-1]
    static Cone shifted(int a) {
      return Cone(Kind::shifted, a);
    }
    // Z[v^2]
    static Cone even() {
      return Cone(Kind::even, 0);
    }
    // N[v^2]
    static Cone even_nonnegative() {
      return Cone(Kind::even_nonnegative, 0);
    }

    Kind kind() const noexcept {
      return _kind;
    }
    int shift() const noexcept {
      return _shift;
    }

   private:
    Cone(Kind k, int a) : _kind(k), _shift(a) {}
    Kind _kind;
    int  _shift;
  };

  class LaurentPoly {
   public:
    LaurentPoly() = default;

    // Constant polynomial.
    LaurentPoly(Integer c) {  // NOLINT(runtime/explicit)
      if (c != 0) {
        _low = 0;
        _coeffs.push_back(std::move(c));
      }
    }
    LaurentPoly(int c) : LaurentPoly(Integer(c)) {}  // NOLINT

    // c * v^e
    static LaurentPoly monomial(Integer c, int e) {
      LaurentPoly p;
      if (c != 0) {
        p._low = e;
        p._coeffs.push_back(std::move(c));
      }
      return p;
    }

    // v^e
    static LaurentPoly v(int e = 1) {
      return monomial(1, e);
    }

    // Builds sum of c * v^e over (e, c) pairs; repeated exponents accumulate.
    static LaurentPoly from_terms(
        std::vector<std::pair<int, Integer>> const& terms) {
      LaurentPoly p;
      for (auto const& [e, c] : terms) {
        p += monomial(c, e);
      }
      return p;
    }

    bool is_zero() const noexcept {
      return _coeffs.empty();
    }

    // Highest exponent with a nonzero coefficient; minus_infinity for zero.
    int degree() const noexcept {
      return is_zero() ? minus_infinity
                       : _low + static_cast<int>(_coeffs.size()) - 1;
    }

    // Lowest exponent with a nonzero coefficient; plus_infinity for zero.
    int low_degree() const noexcept {
      return is_zero() ? plus_infinity : _low;
    }

    Integer coeff(int e) const {
      if (is_zero() || e < _low || e > degree()) {
        return 0;
      }
      return _coeffs[static_cast<std::size_t>(e - _low)];
    }

    // Nonzero terms as (exponent, coefficient), ascending exponent.
    std::vector<std::pair<int, Integer>> terms() const {
      std::vector<std::pair<int, Integer>> out;
      for (std::size_t i = 0; i < _coeffs.size(); ++i) {
        if (_coeffs[i] != 0) {
          out.emplace_back(_low + static_cast<int>(i), _coeffs[i]);
        }
      }
      return out;
    }

    // v -> v^-1
    LaurentPoly bar() const {
      LaurentPoly p;
      if (is_zero()) {
        return p;
      }
      p._low = -degree();
      p._coeffs.assign(_coeffs.rbegin(), _coeffs.rend());
      return p;
    }

    // this * v^k
    LaurentPoly shifted(int k) const {
      LaurentPoly p = *this;
      if (!p.is_zero()) {
        p._low += k;
      }
      return p;
    }

    // *this += c * v^k * p. The inner loop of every Hecke algebra product.
    LaurentPoly& add_scaled(LaurentPoly const& p, int k, int c = 1) {
      if (p.is_zero() || c == 0) {
        return *this;
      }
      int lo = p._low + k;
      int hi = p.degree() + k;
      reserve_range(lo, hi);
      auto offset = static_cast<std::size_t>(lo - _low);
      for (std::size_t i = 0; i < p._coeffs.size(); ++i) {
        if (c == 1) {
          _coeffs[offset + i] += p._coeffs[i];
        } else if (c == -1) {
          _coeffs[offset + i] -= p._coeffs[i];
        } else {
          _coeffs[offset + i] += c * p._coeffs[i];
        }
      }
      normalize();
      return *this;
    }

    LaurentPoly& operator+=(LaurentPoly const& p) {
      return add_scaled(p, 0, 1);
    }
    LaurentPoly& operator-=(LaurentPoly const& p) {
      return add_scaled(p, 0, -1);
    }

    LaurentPoly& operator*=(LaurentPoly const& p) {
      *this = *this * p;
      return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, LaurentPoly const& b) {
      return a += b;
    }
    friend LaurentPoly operator-(LaurentPoly a, LaurentPoly const& b) {
      return a -= b;
    }
    friend LaurentPoly operator-(LaurentPoly a) {
      for (auto& c : a._coeffs) {
        c = -c;
      }
      return a;
    }

    friend LaurentPoly operator*(LaurentPoly const& a, LaurentPoly const& b) {
      LaurentPoly p;
      if (a.is_zero() || b.is_zero()) {
        return p;
      }
      p._low = a._low + b._low;
      p._coeffs.assign(a._coeffs.size() + b._coeffs.size() - 1, Integer(0));
      for (std::size_t i = 0; i < a._coeffs.size(); ++i) {
        if (a._coeffs[i] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b._coeffs.size(); ++j) {
          p._coeffs[i + j] += a._coeffs[i] * b._coeffs[j];
        }
      }
      p.normalize();
      return p;
    }

    friend LaurentPoly operator*(Integer const& c, LaurentPoly p) {
      if (c == 0) {
        return LaurentPoly();
      }
      for (auto& x : p._coeffs) {
        x *= c;
      }
      return p;
    }

    friend bool operator==(LaurentPoly const& a, LaurentPoly const& b) {
      return a._low == b._low && a._coeffs == b._coeffs;
    }

    bool in_cone(Cone const& cone) const {
      switch (cone.kind()) {
        case Cone::Kind::shifted:
          return degree() <= cone.shift();
        case Cone::Kind::even:
        case Cone::Kind::even_nonnegative:
          if (is_zero()) {
            return true;
          }
          if (_low < 0) {
            return false;
          }
          for (std::size_t i = 0; i < _coeffs.size(); ++i) {
            int e = _low + static_cast<int>(i);
            if (e % 2 != 0 && _coeffs[i] != 0) {
              return false;
            }
            if (cone.kind() == Cone::Kind::even_nonnegative
                && _coeffs[i] < 0) {
              return false;
            }
          }
          return true;
      }
      return false;
    }

    // Exact value at v = c. c must be nonzero.
    Rational eval(Rational const& c) const {
      if (c == 0) {
        throw UsageError("LaurentPoly::eval: evaluation point must be nonzero");
      }
      Rational result = 0;
      // Horner over the stored interval, then scale by c^low.
      for (auto it = _coeffs.rbegin(); it != _coeffs.rend(); ++it) {
        result = result * c + Rational(*it);
      }
      if (is_zero()) {
        return result;
      }
      Rational scale = 1;
      Rational base  = _low >= 0 ? c : Rational(1) / c;
      for (int i = 0; i < std::abs(_low); ++i) {
        scale *= base;
      }
      return result * scale;
    }

    Integer eval_at_one() const {
      Integer s = 0;
      for (auto const& c : _coeffs) {
        s += c;
      }
      return s;
    }

    // Human readable, highest exponent first: "v^2 - 2 + v^-2".
    std::string to_string() const {
      if (is_zero()) {
        return "0";
      }
      std::ostringstream os;
      bool first = true;
      for (int e = degree(); e >= _low; --e) {
        Integer c = coeff(e);
        if (c == 0) {
          continue;
        }
        Integer mag = c < 0 ? Integer(-c) : c;
        if (first) {
          if (c < 0) {
            os << "-";
          }
        } else {
          os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
          os << mag;
          continue;
        }
        if (mag != 1) {
          os << mag << "*";
        }
        os << "v";
        if (e != 1) {
          os << "^" << e;
        }
      }
      return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, LaurentPoly const& p) {
      return os << p.to_string();
    }

   private:
    void reserve_range(int lo, int hi) {
      if (is_zero()) {
        _low = lo;
        _coeffs.assign(static_cast<std::size_t>(hi - lo + 1), Integer(0));
        return;
      }
      int cur_hi = degree();
      if (lo < _low) {
        _coeffs.insert(_coeffs.begin(), static_cast<std::size_t>(_low - lo),
                       Integer(0));
        _low = lo;
      }
      if (hi > cur_hi) {
        _coeffs.resize(_coeffs.size() + static_cast<std::size_t>(hi - cur_hi),
                       Integer(0));
      }
    }

    void normalize() {
      while (!_coeffs.empty() && _coeffs.back() == 0) {
        _coeffs.pop_back();
      }
      std::size_t lead = 0;
      while (lead < _coeffs.size() && _coeffs[lead] == 0) {
        ++lead;
      }
      if (lead == _coeffs.size()) {
        _coeffs.clear();
        _low = 0;
        return;
      }
      if (lead > 0) {
        _coeffs.erase(_coeffs.begin(),
                      _coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
        _low += static_cast<int>(lead);
      }
    }

    int                  _low = 0;
    std::vector<Integer> _coeffs;
  };

  // v^k - v^-k, the deformation term of the quadratic relation.
  inline LaurentPoly v_minus_inverse(int k) {
    return LaurentPoly::v(k) - LaurentPoly::v(-k);
  }

}  // namespace hx

#endif  // HX_LAURENT_HPP_
