#ifndef HX_FINITE_GROUP_HPP_
#define HX_FINITE_GROUP_HPP_

// Indexed multiplication tables for a finite Coxeter group, and the
// conjugacy-class machinery built on them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hx/coxeter.hpp"
#include "hx/error.hpp"

namespace hx::coxeter {

  using ElementId = std::uint32_t;

  // Elements of a finite W numbered 0..|W|-1 in (length, ShortLex) order, so
  // id 0 is the identity and id |W|-1 is the longest element.
  class FiniteGroup {
   public:
    static constexpr std::size_t default_limit = 5'000'000;

    explicit FiniteGroup(System system, std::size_t limit = default_limit)
        : _system(std::move(system)) {
      if (!_system.is_finite()) {
        throw GatingError("finite Coxeter group required, got "
                          + _system.name());
      }
      std::size_t const n = _system.rank();
      // BFS over coweights; ids are assigned after sorting.
      std::map<Word, System::Coweight> all;
      std::vector<System::Coweight>    frontier{_system.rho()};
      all.emplace(Word{}, _system.rho());
      while (!frontier.empty()) {
        std::vector<System::Coweight> next;
        for (auto const& mu : frontier) {
          for (std::size_t s = 0; s < n; ++s) {
            if (mu[s] < 0) {
              continue;
            }
            System::Coweight nu = mu;
            _system.fire(nu, static_cast<Generator>(s));
            Element e = _system.from_action(nu);
            if (all.emplace(e.word(), nu).second) {
              next.push_back(std::move(nu));
              if (all.size() > limit) {
                throw GatingError("group " + _system.name()
                                  + " exceeds the enumeration limit");
              }
            }
          }
        }
        frontier = std::move(next);
      }
      std::vector<std::pair<Element, System::Coweight>> sorted;
      sorted.reserve(all.size());
      for (auto& [w, mu] : all) {
        sorted.emplace_back(_system.normal_form(w), std::move(mu));
      }
      std::sort(sorted.begin(), sorted.end(),
                [](auto const& a, auto const& b) { return a.first < b.first; });
      std::map<System::Coweight, ElementId> by_action;
      for (auto& [e, mu] : sorted) {
        by_action.emplace(mu, static_cast<ElementId>(_elements.size()));
        _index.emplace(e.word(), static_cast<ElementId>(_elements.size()));
        _elements.push_back(e);
      }
      std::size_t const size = _elements.size();
      _left.assign(n * size, 0);
      _right.assign(n * size, 0);
      _inverse.assign(size, 0);
      for (std::size_t id = 0; id < size; ++id) {
        Word const& w = _elements[id].word();
        for (std::size_t s = 0; s < n; ++s) {
          System::Coweight mu = sorted[id].second;
          _system.fire(mu, static_cast<Generator>(s));
          _left[s * size + id] = by_action.at(mu);
          Word ws = w;
          ws.push_back(static_cast<Generator>(s));
          _right[s * size + id] = by_action.at(_system.action(ws));
        }
        Word rev(w.rbegin(), w.rend());
        _inverse[id] = by_action.at(_system.action(rev));
      }
    }

    System const& system() const noexcept {
      return _system;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    std::size_t rank() const noexcept {
      return _system.rank();
    }
    Element const& element(ElementId id) const {
      return _elements[id];
    }
    std::vector<Element> const& elements() const noexcept {
      return _elements;
    }
    std::size_t length(ElementId id) const {
      return _elements[id].length();
    }

    ElementId index(Element const& e) const {
      auto it = _index.find(e.word());
      if (it == _index.end()) {
        throw UsageError("element " + e.to_string() + " is not in "
                         + _system.name());
      }
      return it->second;
    }

    static constexpr ElementId identity() noexcept {
      return 0;
    }
    ElementId longest() const noexcept {
      return static_cast<ElementId>(_elements.size() - 1);
    }

    // s * w
    ElementId left(Generator s, ElementId w) const {
      return _left[static_cast<std::size_t>(s) * size() + w];
    }
    // w * s
    ElementId right(ElementId w, Generator s) const {
      return _right[static_cast<std::size_t>(s) * size() + w];
    }
    ElementId inverse(ElementId w) const {
      return _inverse[w];
    }

    bool is_left_descent(Generator s, ElementId w) const {
      return length(left(s, w)) < length(w);
    }
    bool is_right_descent(ElementId w, Generator s) const {
      return length(right(w, s)) < length(w);
    }

    ElementId multiply(ElementId a, ElementId b) const {
      Word const& w = _elements[a].word();
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        b = left(*it, b);
      }
      return b;
    }

    ElementId conjugate(Generator s, ElementId w) const {
      return left(s, right(w, s));
    }

   private:
    System                   _system;
    std::vector<Element>     _elements;
    std::map<Word, ElementId> _index;
    std::vector<ElementId>   _left;
    std::vector<ElementId>   _right;
    std::vector<ElementId>   _inverse;
  };

  struct ConjugacyClass {
    Element              representative;  // ShortLex-least of min_length_set
    std::vector<Element> members;         // sorted by (length, ShortLex)
    std::vector<Element> min_length_set;  // C_min
    std::uint64_t        centralizer_order = 0;

    std::size_t size() const noexcept {
      return members.size();
    }
    std::size_t min_length() const noexcept {
      return representative.length();
    }
    bool contains(Element const& e) const {
      return std::binary_search(members.begin(), members.end(), e);
    }
  };

  // Orbits under conjugation by the generators, from every element. Classes
  // come out sorted by (min length, ShortLex of the representative), which is
  // the order of their first members in the id numbering.
  inline std::vector<ConjugacyClass> conjugacy_classes(FiniteGroup const& g) {
    std::vector<std::int64_t>   class_of(g.size(), -1);
    std::vector<ConjugacyClass> out;
    for (ElementId start = 0; start < g.size(); ++start) {
      if (class_of[start] >= 0) {
        continue;
      }
      auto const             cid = static_cast<std::int64_t>(out.size());
      std::vector<ElementId> orbit{start};
      class_of[start] = cid;
      for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (std::size_t s = 0; s < g.rank(); ++s) {
          ElementId c = g.conjugate(static_cast<Generator>(s), orbit[k]);
          if (class_of[c] < 0) {
            class_of[c] = cid;
            orbit.push_back(c);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      ConjugacyClass cls;
      for (ElementId id : orbit) {
        cls.members.push_back(g.element(id));
        if (g.length(id) == g.length(orbit.front())) {
          cls.min_length_set.push_back(g.element(id));
        }
      }
      cls.representative    = cls.members.front();
      cls.centralizer_order = g.size() / orbit.size();
      out.push_back(std::move(cls));
    }
    return out;
  }

  inline std::vector<ConjugacyClass> conjugacy_classes(System const& system) {
    return conjugacy_classes(FiniteGroup(system));
  }

  struct SpecialElements {
    ConjugacyClass coxeter_class;
    Element        coxeter_element;  // s_0 s_1 ... s_{rank-1}
    Element        longest;
  };

  inline SpecialElements special_elements(FiniteGroup const& g) {
    System const& sys = g.system();
    if (!sys.is_irreducible()) {
      throw GatingError("special elements need an irreducible system, got "
                        + sys.name());
    }
    Word w;
    for (std::size_t s = 0; s < sys.rank(); ++s) {
      w.push_back(static_cast<Generator>(s));
    }
    Element cox = sys.normal_form(w);
    for (auto& cls : conjugacy_classes(g)) {
      if (cls.contains(cox)) {
        return {std::move(cls), cox, g.element(g.longest())};
      }
    }
    throw InvariantError("Coxeter element not found in any class");
  }

  inline SpecialElements special_elements(System const& system) {
    return special_elements(FiniteGroup(system));
  }

}  // namespace hx::coxeter

#endif  // HX_FINITE_GROUP_HPP_
