#ifndef HX_COXETER_HPP_
#define HX_COXETER_HPP_

// Crystallographic Coxeter systems and their elements.
//
// An element is stored as its ShortLex-least reduced word, so equality of
// elements is equality of words. All reduction goes through the numbers game:
// w is identified with the vector w(rho) in the coweight lattice, written in
// the coordinates mu_i = <w(rho), alpha_i>, where rho is the coweight with
// <rho, alpha_i> = 1 for every simple root. The stabilizer of rho is trivial,
// and s_i is a left descent of w exactly when mu_i < 0.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <cmath>

#include "hx/error.hpp"

namespace hx::coxeter {

  using Generator = int;
  using Word      = std::vector<Generator>;

  // Bond order m_ij = infinity is stored as 0.
  inline constexpr int infinity = 0;

  class System;

  // A group element, held as its canonical (ShortLex-least reduced) word.
  // Ordering is by length, then lexicographic, which is the enumeration order.
  class Element {
   public:
    Element() = default;

    Word const& word() const noexcept {
      return _word;
    }
    std::size_t length() const noexcept {
      return _word.size();
    }
    bool is_identity() const noexcept {
      return _word.empty();
    }

    // "e" for the identity, otherwise the comma separated word.
    std::string to_string() const {
      if (_word.empty()) {
        return "e";
      }
      std::string s;
      for (std::size_t i = 0; i < _word.size(); ++i) {
        if (i > 0) {
          s += ',';
        }
        s += std::to_string(_word[i]);
      }
      return s;
    }

    friend bool operator==(Element const&, Element const&) = default;

    friend bool operator<(Element const& a, Element const& b) {
      if (a._word.size() != b._word.size()) {
        return a._word.size() < b._word.size();
      }
      return a._word < b._word;
    }

   private:
    friend class System;
    explicit Element(Word w) : _word(std::move(w)) {}
    Word _word;
  };

  class System {
   public:
    using Matrix = std::vector<std::vector<int>>;
    // Coordinates of w(rho); see the file comment.
    using Coweight = std::vector<std::int64_t>;

    ////////////////////////////////////////////////////////////////////////
    // Construction
    ////////////////////////////////////////////////////////////////////////

    // Accepts A<n> B<n> C<n> D<n> E6 E7 E8 F4 G2 and the affine ~X<n>.
    static System from_label(std::string const& label) {
      static std::regex const re(R"(^(~?)([A-G])([0-9]+)$)");
      std::smatch m;
      if (!std::regex_match(label, m, re)) {
        throw UsageError("unknown Coxeter type label '" + label + "'");
      }
      bool        affine = !m[1].str().empty();
      char        family = m[2].str()[0];
      std::size_t n      = 0;
      try {
        n = std::stoul(m[3].str());
      } catch (std::exception const&) {
        throw UsageError("unknown Coxeter type label '" + label + "'");
      }
      if (n > 64) {
        throw UsageError("rank too large in label '" + label + "'");
      }
      Builder b = affine ? affine_graph(family, n, label)
                         : finite_graph(family, n, label);
      System  s(std::move(b.m), b.long_nodes);
      s._label  = label;
      s._finite = !affine;
      return s;
    }

    // Explicit Coxeter matrix; entries must be 1 on the diagonal and one of
    // 2, 3, 4, 6 or infinity (0) elsewhere.
    static System from_matrix(Matrix const& m) {
      std::size_t n = m.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) {
          throw UsageError("Coxeter matrix is not square");
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i][i] != 1) {
          throw UsageError("Coxeter matrix diagonal entries must be 1");
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (m[i][j] != m[j][i]) {
            throw UsageError("Coxeter matrix is not symmetric");
          }
          if (i == j) {
            continue;
          }
          int e = m[i][j];
          if (e == 1 || e < 0) {
            throw UsageError("off-diagonal Coxeter matrix entries must be >= 2");
          }
          if (e != infinity && e != 2 && e != 3 && e != 4 && e != 6) {
            throw UsageError("unsupported bond order " + std::to_string(e)
                             + " (only 2, 3, 4, 6 and infinity are "
                               "crystallographic)");
          }
        }
      }
      System s(m, std::vector<bool>(n, false));
      s._finite = s.positive_definite();
      return s;
    }

    ////////////////////////////////////////////////////////////////////////
    // Accessors
    ////////////////////////////////////////////////////////////////////////

    std::size_t rank() const noexcept {
      return _m.size();
    }
    // Bond order, infinity encoded as 0.
    int m(Generator i, Generator j) const {
      return _m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    Matrix const& matrix() const noexcept {
      return _m;
    }
    // Cartan matrix a_ij = <alpha_i^vee, alpha_j>.
    Matrix const& cartan() const noexcept {
      return _cartan;
    }
    std::optional<std::string> const& label() const noexcept {
      return _label;
    }
    std::string name() const {
      return _label ? *_label : std::string("matrix");
    }
    bool is_finite() const noexcept {
      return _finite;
    }

    // True when the Coxeter graph (edges m_ij != 2) is connected.
    bool is_irreducible() const {
      std::size_t n = rank();
      if (n == 0) {
        return false;
      }
      std::vector<bool>        seen(n, false);
      std::vector<std::size_t> stack{0};
      seen[0]            = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
          if (!seen[j] && _m[i][j] != 2 && i != j) {
            seen[j] = true;
            ++count;
            stack.push_back(j);
          }
        }
      }
      return count == n;
    }

    friend bool operator==(System const& a, System const& b) {
      return a._m == b._m && a._cartan == b._cartan;
    }

    ////////////////////////////////////////////////////////////////////////
    // Numbers game
    ////////////////////////////////////////////////////////////////////////

    Coweight rho() const {
      return Coweight(rank(), 1);
    }

    // mu -> s_i(mu)
    void fire(Coweight& mu, Generator i) const {
      auto const    si  = static_cast<std::size_t>(i);
      std::int64_t  val = mu[si];
      for (std::size_t j = 0; j < rank(); ++j) {
        int a = _cartan[si][j];
        if (a == 0) {
          continue;
        }
        std::int64_t prod;
        std::int64_t res;
        if (__builtin_mul_overflow(static_cast<std::int64_t>(a), val, &prod)
            || __builtin_sub_overflow(mu[j], prod, &res)) {
          throw GatingError("root coordinates exceed 64-bit range");
        }
        mu[j] = res;
      }
    }

    // w(rho) for the product of the letters of word.
    Coweight action(std::span<Generator const> word) const {
      check_word(word);
      Coweight mu = rho();
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        fire(mu, *it);
      }
      return mu;
    }

    // Canonical element with the given coweight; consumes mu.
    Element from_action(Coweight mu) const {
      Word w;
      for (;;) {
        std::size_t i = 0;
        while (i < mu.size() && mu[i] > 0) {
          ++i;
        }
        if (i == mu.size()) {
          break;
        }
        w.push_back(static_cast<Generator>(i));
        fire(mu, static_cast<Generator>(i));
      }
      return Element(std::move(w));
    }

    ////////////////////////////////////////////////////////////////////////
    // Element arithmetic
    ////////////////////////////////////////////////////////////////////////

    Element identity() const {
      return Element();
    }

    Element generator(Generator s) const {
      check_generator(s);
      return Element(Word{s});
    }

    Element normal_form(std::span<Generator const> word) const {
      return from_action(action(word));
    }
    Element normal_form(std::initializer_list<Generator> word) const {
      return normal_form(std::span<Generator const>(word.begin(), word.size()));
    }

    Element multiply(Element const& a, Element const& b) const {
      Word w = a.word();
      w.insert(w.end(), b.word().begin(), b.word().end());
      return normal_form(w);
    }

    Element inverse(Element const& a) const {
      Word w(a.word().rbegin(), a.word().rend());
      return normal_form(w);
    }

    // s * a
    Element left_multiply(Generator s, Element const& a) const {
      check_generator(s);
      Coweight mu = action(a.word());
      fire(mu, s);
      return from_action(std::move(mu));
    }

    // a * s
    Element right_multiply(Element const& a, Generator s) const {
      check_generator(s);
      Word w = a.word();
      w.push_back(s);
      return normal_form(w);
    }

    bool is_left_descent(Generator s, Element const& a) const {
      check_generator(s);
      return action(a.word())[static_cast<std::size_t>(s)] < 0;
    }

    bool is_right_descent(Element const& a, Generator s) const {
      check_generator(s);
      Word w(a.word().rbegin(), a.word().rend());
      return action(w)[static_cast<std::size_t>(s)] < 0;
    }

    // (left descent set, right descent set), ascending.
    std::pair<std::vector<Generator>, std::vector<Generator>> descents(
        Element const& a) const {
      std::pair<std::vector<Generator>, std::vector<Generator>> out;
      Coweight left = action(a.word());
      Word     rev(a.word().rbegin(), a.word().rend());
      Coweight right = action(rev);
      for (std::size_t i = 0; i < rank(); ++i) {
        if (left[i] < 0) {
          out.first.push_back(static_cast<Generator>(i));
        }
        if (right[i] < 0) {
          out.second.push_back(static_cast<Generator>(i));
        }
      }
      return out;
    }

    ////////////////////////////////////////////////////////////////////////
    // Enumeration and Bruhat order
    ////////////////////////////////////////////////////////////////////////

    // All elements of length <= max_length sorted by (length, ShortLex). The
    // bound may be omitted only for finite systems.
    std::vector<Element> enumerate(
        std::optional<std::size_t> max_length = std::nullopt) const {
      if (!max_length && !_finite) {
        throw GatingError("unbounded enumeration of an infinite Coxeter group");
      }
      std::vector<Element>  out{identity()};
      std::vector<Coweight> frontier{rho()};
      for (std::size_t len = 0; !max_length || len < *max_length; ++len) {
        std::map<Word, Coweight> next;
        for (auto const& mu : frontier) {
          for (std::size_t s = 0; s < rank(); ++s) {
            if (mu[s] < 0) {
              continue;
            }
            Coweight nu = mu;
            fire(nu, static_cast<Generator>(s));
            Element e = from_action(nu);
            next.emplace(e.word(), std::move(nu));
          }
        }
        if (next.empty()) {
          break;
        }
        frontier.clear();
        for (auto& [w, mu] : next) {
          out.push_back(Element(w));
          frontier.push_back(std::move(mu));
        }
      }
      return out;
    }

    // Bruhat order, by the lifting property: for a left descent s of y,
    // x <= y iff (sx <= sy when s is a left descent of x, else x <= sy).
    // Equivalent to the subword criterion on a reduced word of y.
    bool bruhat_leq(Element x, Element y) const {
      while (true) {
        if (x.length() > y.length()) {
          return false;
        }
        if (x.length() == y.length()) {
          return x == y;
        }
        if (x.is_identity()) {
          return true;
        }
        Generator s = y.word().front();
        Word      rest(y.word().begin() + 1, y.word().end());
        y = Element(std::move(rest));  // canonical suffix of a canonical word
        if (is_left_descent(s, x)) {
          x = left_multiply(s, x);
        }
      }
    }

    // The parsed form of an element given by a raw generator word.
    void check_word(std::span<Generator const> word) const {
      for (auto g : word) {
        check_generator(g);
      }
    }

    void check_generator(Generator s) const {
      if (s < 0 || static_cast<std::size_t>(s) >= rank()) {
        throw UsageError("generator index " + std::to_string(s)
                         + " out of range for rank " + std::to_string(rank()));
      }
    }

   private:
    struct Builder {
      Matrix            m;
      std::vector<bool> long_nodes;
    };

    System(Matrix m, std::vector<bool> const& long_nodes) : _m(std::move(m)) {
      std::size_t n = _m.size();
      _cartan.assign(n, std::vector<int>(n, 0));
      for (std::size_t i = 0; i < n; ++i) {
        _cartan[i][i] = 2;
        for (std::size_t j = i + 1; j < n; ++j) {
          int e = _m[i][j];
          int k = 0;
          switch (e) {
            case 2:
              continue;
            case 3:
              _cartan[i][j] = _cartan[j][i] = -1;
              continue;
            case infinity:
              _cartan[i][j] = _cartan[j][i] = -2;
              continue;
            case 4:
              k = 2;
              break;
            case 6:
              k = 3;
              break;
            default:
              break;
          }
          // The long root sees the short one with coefficient -1.
          if (long_nodes[j] && !long_nodes[i]) {
            _cartan[j][i] = -1;
            _cartan[i][j] = -k;
          } else {
            _cartan[i][j] = -1;
            _cartan[j][i] = -k;
          }
        }
      }
    }

    static Builder chain(std::size_t n) {
      Builder b;
      b.m.assign(n, std::vector<int>(n, 2));
      for (std::size_t i = 0; i < n; ++i) {
        b.m[i][i] = 1;
        if (i + 1 < n) {
          b.m[i][i + 1] = b.m[i + 1][i] = 3;
        }
      }
      b.long_nodes.assign(n, false);
      return b;
    }

    static void bond(Builder& b, std::size_t i, std::size_t j, int order) {
      b.m[i][j] = b.m[j][i] = order;
    }

    static Builder e_graph(std::size_t n, std::size_t offset) {
      // Bourbaki numbering 1..n shifted to offset..offset+n-1.
      Builder b = chain(n + offset);
      for (std::size_t i = 0; i + 1 < n + offset; ++i) {
        b.m[i][i + 1] = b.m[i + 1][i] = 2;
      }
      auto node = [&](std::size_t k) { return offset + k - 1; };
      bond(b, node(1), node(3), 3);
      bond(b, node(3), node(4), 3);
      bond(b, node(2), node(4), 3);
      for (std::size_t k = 4; k < n; ++k) {
        bond(b, node(k), node(k + 1), 3);
      }
      return b;
    }

    static Builder finite_graph(char family, std::size_t n,
                                std::string const& label) {
      auto bad = [&]() {
        return UsageError("unknown Coxeter type label '" + label + "'");
      };
      switch (family) {
        case 'A': {
          if (n < 1) {
            throw bad();
          }
          return chain(n);
        }
        case 'B':
        case 'C': {
          if (n < 2) {
            throw bad();
          }
          Builder b = chain(n);
          bond(b, n - 2, n - 1, 4);
          for (std::size_t i = 0; i < n; ++i) {
            b.long_nodes[i] = (family == 'B') ? (i + 1 < n) : (i + 1 == n);
          }
          return b;
        }
        case 'D': {
          if (n < 4) {
            throw bad();
          }
          Builder b = chain(n);
          bond(b, n - 2, n - 1, 2);
          bond(b, n - 3, n - 1, 3);
          return b;
        }
        case 'E': {
          if (n < 6 || n > 8) {
            throw bad();
          }
          return e_graph(n, 0);
        }
        case 'F': {
          if (n != 4) {
            throw bad();
          }
          Builder b = chain(4);
          bond(b, 1, 2, 4);
          b.long_nodes = {true, true, false, false};
          return b;
        }
        case 'G': {
          if (n != 2) {
            throw bad();
          }
          Builder b = chain(2);
          bond(b, 0, 1, 6);
          b.long_nodes = {true, false};
          return b;
        }
        default:
          throw bad();
      }
    }

    // Node 0 is the affine node; nodes 1..n carry the finite diagram.
    static Builder affine_graph(char family, std::size_t n,
                                std::string const& label) {
      auto bad = [&]() {
        return UsageError("unknown Coxeter type label '" + label + "'");
      };
      switch (family) {
        case 'A': {
          if (n < 1) {
            throw bad();
          }
          Builder b = chain(n + 1);
          if (n == 1) {
            bond(b, 0, 1, infinity);
          } else {
            bond(b, 0, n, 3);
          }
          return b;
        }
        case 'B': {
          if (n < 3) {
            throw bad();
          }
          Builder b = chain(n + 1);
          bond(b, 0, 1, 2);
          bond(b, 0, 2, 3);
          bond(b, n - 1, n, 4);
          for (std::size_t i = 0; i <= n; ++i) {
            b.long_nodes[i] = i < n;
          }
          return b;
        }
        case 'C': {
          if (n < 2) {
            throw bad();
          }
          Builder b = chain(n + 1);
          bond(b, 0, 1, 4);
          bond(b, n - 1, n, 4);
          b.long_nodes[0] = true;
          b.long_nodes[n] = true;
          return b;
        }
        case 'D': {
          if (n < 4) {
            throw bad();
          }
          Builder b = chain(n + 1);
          bond(b, 0, 1, 2);
          bond(b, 0, 2, 3);
          bond(b, n - 1, n, 2);
          bond(b, n - 2, n, 3);
          return b;
        }
        case 'E': {
          if (n < 6 || n > 8) {
            throw bad();
          }
          Builder b = e_graph(n, 1);
          std::size_t attach = n == 6 ? 2 : (n == 7 ? 1 : 8);
          bond(b, 0, attach, 3);
          return b;
        }
        case 'F': {
          if (n != 4) {
            throw bad();
          }
          Builder b = chain(5);
          bond(b, 2, 3, 4);
          b.long_nodes = {true, true, true, false, false};
          return b;
        }
        case 'G': {
          if (n != 2) {
            throw bad();
          }
          Builder b = chain(3);
          bond(b, 1, 2, 6);
          b.long_nodes = {true, true, false};
          return b;
        }
        default:
          throw bad();
      }
    }

    // Sylvester test on the Tits form B_ij = -cos(pi / m_ij).
    bool positive_definite() const {
      std::size_t                      n = rank();
      std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
      double const                     pi = std::acos(-1.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          int e   = _m[i][j];
          b[i][j] = e == infinity ? -1.0 : -std::cos(pi / e);
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (b[k][k] <= 1e-9) {
          return false;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
          double f = b[i][k] / b[k][k];
          for (std::size_t j = k; j < n; ++j) {
            b[i][j] -= f * b[k][j];
          }
        }
      }
      return true;
    }

    Matrix                     _m;
    Matrix                     _cartan;
    std::optional<std::string> _label;
    bool                       _finite = false;
  };

}  // namespace hx::coxeter

#endif  // HX_COXETER_HPP_
