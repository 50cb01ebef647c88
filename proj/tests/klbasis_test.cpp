#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "hx/klbasis.hpp"
#include "oracles.hpp"

using hx::Cone;
using hx::Integer;
using hx::LaurentPoly;
using hx::coxeter::Element;
using hx::coxeter::ElementId;
using hx::coxeter::FiniteGroup;
using hx::coxeter::System;
using hx::hecke::HeckeAlgebra;
using hx::hecke::HeckeElement;
using hx::hecke::WeightFunction;
using hx::kl::FiniteKL;
using hx::kl::KazhdanLusztig;

namespace {

  KazhdanLusztig solver(std::string const& label, std::vector<int> w = {}) {
    auto sys = System::from_label(label);
    auto wf  = w.empty() ? WeightFunction::equal(sys) : WeightFunction::make(sys, w);
    return KazhdanLusztig(HeckeAlgebra(sys, wf));
  }

  FiniteKL finite(std::string const& label, std::vector<int> w = {},
                  unsigned jobs = 1) {
    auto g  = std::make_shared<FiniteGroup const>(System::from_label(label));
    auto wf = w.empty() ? WeightFunction::equal(g->system())
                        : WeightFunction::make(g->system(), w);
    return FiniteKL(g, wf, jobs);
  }

  void expect_kl_properties(KazhdanLusztig const& kl, Element const& w) {
    auto const& alg = kl.algebra();
    auto const& sys = kl.system();
    auto        c   = kl.c(w);
    EXPECT_EQ(alg.bar(c), c) << w.to_string();
    EXPECT_EQ(c.coefficient(w), LaurentPoly(1));
    for (auto const& [y, p] : c.terms()) {
      EXPECT_TRUE(sys.bruhat_leq(y, w));
      if (y != w) {
        EXPECT_TRUE(p.in_cone(Cone::shifted(-1)))
            << y.to_string() << " " << w.to_string() << " " << p.to_string();
      }
    }
  }

}  // namespace

TEST(KLBasis, SmallExamples) {
  auto        kl  = solver("A2");
  auto const& sys = kl.system();
  EXPECT_EQ(kl.c(sys.identity()), kl.algebra().one());
  for (int s = 0; s < 2; ++s) {
    auto         g = sys.generator(s);
    HeckeElement expected = kl.algebra().T(g);
    expected.add(sys.identity(), LaurentPoly::v(-1));
    EXPECT_EQ(kl.c(g), expected);
  }
  auto         w0 = sys.normal_form({0, 1, 0});
  HeckeElement expected;
  for (auto const& y : sys.enumerate()) {
    expected.add(y, LaurentPoly::v(static_cast<int>(y.length()) - 3));
  }
  EXPECT_EQ(kl.c(w0), expected);

  auto b2 = solver("B2", {1, 2});
  auto s1 = b2.system().generator(1);
  HeckeElement cs1 = b2.algebra().T(s1);
  cs1.add(b2.system().identity(), LaurentPoly::v(-2));
  EXPECT_EQ(b2.c(s1), cs1);
}

TEST(KLBasis, InvariantsHoldEverywhere) {
  for (auto [label, weights] :
       std::vector<std::pair<std::string, std::vector<int>>>{
           {"A3", {}}, {"B3", {}}, {"B2", {1, 2}}, {"B3", {2, 2, 1}}, {"G2", {3, 1}}}) {
    auto kl = solver(label, weights);
    for (auto const& w : kl.system().enumerate()) {
      expect_kl_properties(kl, w);
    }
  }
}

TEST(KLBasis, AffineSample) {
  auto kl = solver("~G2", {1, 1, 3});
  for (auto const& w : kl.system().enumerate(5)) {
    expect_kl_properties(kl, w);
  }
}

TEST(KLBasis, MatchesClassicalRecursion) {
  for (auto label : {"A3", "B3", "G2"}) {
    auto kl     = solver(label);
    auto oracle = hx::oracle::kl_by_recursion(kl.algebra());
    for (auto const& [w, c] : oracle) {
      EXPECT_EQ(kl.c(w), c) << label << " " << w.to_string();
    }
  }
}

TEST(KLBasis, DenseCacheAgreesWithGeneric) {
  auto fk = finite("B3", {1, 1, 2});
  auto kl = solver("B3", {1, 1, 2});
  for (ElementId w = 0; w < fk.size(); ++w) {
    auto h = fk.hecke().to_sparse(fk.c_dense(w));
    EXPECT_EQ(h, kl.c(fk.group().element(w)));
  }
}

TEST(KLBasis, ChangeOfBasisRoundTrip) {
  std::mt19937_64 rng(17);
  auto            kl  = solver("B3", {1, 1, 2});
  auto const&     sys = kl.system();
  for (int trial = 0; trial < 30; ++trial) {
    HeckeElement h;
    for (int k = 0; k < 4; ++k) {
      h.add(sys.normal_form(hx::oracle::random_word(rng, 3, 9)),
            hx::oracle::random_poly(rng, 3, 4));
    }
    auto coords = kl.to_c_basis(h);
    EXPECT_EQ(kl.from_c_basis(coords), h);
  }
}

TEST(KLBasis, SampledBarInvarianceInB4) {
  auto            kl    = solver("B4");
  auto            elems = kl.system().enumerate();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    expect_kl_properties(kl, elems[rng() % elems.size()]);
  }
  expect_kl_properties(kl, elems.back());
}

TEST(HConstants, Examples) {
  auto        a1 = solver("A1");
  auto        s  = a1.system().generator(0);
  auto        h  = a1.h_constants(s, s);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.at(s), LaurentPoly::v() + LaurentPoly::v(-1));

  auto        a2  = solver("A2");
  auto const& sys = a2.system();
  auto        h2  = a2.h_constants(sys.generator(0), sys.generator(1));
  ASSERT_EQ(h2.size(), 1u);
  EXPECT_EQ(h2.at(sys.normal_form({0, 1})), LaurentPoly(1));
  for (auto const& y : sys.enumerate()) {
    auto he = a2.h_constants(sys.identity(), y);
    ASSERT_EQ(he.size(), 1u);
    EXPECT_EQ(he.at(y), LaurentPoly(1));
  }
}

TEST(HConstants, BarInvariantAndDenseAgreesWithGeneric) {
  for (auto [label, weights] :
       std::vector<std::pair<std::string, std::vector<int>>>{
           {"A3", {}}, {"B2", {1, 2}}, {"G2", {1, 3}}}) {
    auto fk = finite(label, weights);
    auto kl = solver(label, weights);
    for (ElementId x = 0; x < fk.size(); ++x) {
      for (ElementId y = 0; y < fk.size(); ++y) {
        auto dense   = fk.h_constants(x, y);
        auto generic = kl.h_constants(fk.group().element(x), fk.group().element(y));
        ASSERT_EQ(dense.size(), generic.size()) << label;
        for (auto const& [z, p] : dense) {
          EXPECT_EQ(generic.at(fk.group().element(z)), p);
          EXPECT_EQ(p.bar(), p);
        }
      }
    }
    // h_row reproduces h_constants.
    ElementId y = static_cast<ElementId>(fk.size() / 2);
    fk.h_row(y, [&](ElementId x, hx::kl::Sparse const& row) {
      EXPECT_EQ(row, fk.h_constants(x, y));
    });
  }
}

TEST(AFunction, SmallTypes) {
  EXPECT_EQ(finite("A1").a_function().values, (std::vector<int>{0, 1}));
  EXPECT_EQ(finite("A2").a_function().values, (std::vector<int>{0, 1, 1, 1, 1, 3}));
  EXPECT_EQ(finite("B2").a_function().values,
            (std::vector<int>{0, 1, 1, 1, 1, 1, 1, 4}));
  auto a3 = finite("A3").a_function();
  EXPECT_EQ(a3.values.back(), 6);
  // Unequal B2: a(w0) = L(w0).
  auto b2 = finite("B2", {1, 2}).a_function();
  EXPECT_EQ(b2.values.back(), 6);
  EXPECT_EQ(b2.values[0], 0);
}

TEST(AFunction, WitnessAttainsTheValue) {
  auto fk = finite("B3");
  auto a  = fk.a_function();
  for (ElementId z = 0; z < fk.size(); ++z) {
    auto [x, y] = a.witness[z];
    int deg     = hx::minus_infinity;
    for (auto const& [u, p] : fk.h_constants(x, y)) {
      if (u == z) {
        deg = p.degree();
      }
    }
    EXPECT_EQ(deg, a.values[z]);
  }
  EXPECT_EQ(finite("B3", {}, 2).a_function().values, a.values);
}

TEST(JRing, A1) {
  auto j = finite("A1").j_ring();
  EXPECT_EQ(j.structure(0, 0, 0), 1);
  EXPECT_EQ(j.structure(1, 1, 1), 1);
  EXPECT_EQ(j.structure(0, 1, 0), 0);
  EXPECT_EQ(j.structure(0, 1, 1), 0);
  EXPECT_EQ(j.gamma(1, 1, 1), 1);
  auto unit = j.find_unit();
  EXPECT_TRUE(unit.exists);
  EXPECT_TRUE(unit.unique);
  EXPECT_EQ(unit.unit, (hx::kl::JElement{{0, Integer(1)}, {1, Integer(1)}}));
}

TEST(JRing, A2Products) {
  auto        fk  = finite("A2");
  auto        j   = fk.j_ring();
  auto const& g   = fk.group();
  auto const& sys = g.system();
  auto        s0  = g.index(sys.generator(0));
  auto        s1  = g.index(sys.generator(1));
  auto        s01 = g.index(sys.normal_form({0, 1}));
  EXPECT_EQ(j.multiply(j.basis(s0), j.basis(s01)), j.basis(s01));
  EXPECT_TRUE(j.multiply(j.basis(s0), j.basis(s1)).empty());
  auto rep = j.check_associativity();
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.triples, 216u);
  auto unit = j.find_unit();
  EXPECT_TRUE(unit.exists);
  EXPECT_EQ(unit.unit.size(), 4u);
  for (ElementId w = 0; w < g.size(); ++w) {
    EXPECT_EQ(j.multiply(unit.unit, j.basis(w)), j.basis(w));
    EXPECT_EQ(j.multiply(j.basis(w), unit.unit), j.basis(w));
  }
}

TEST(JRing, GammaCyclicSymmetry) {
  auto fk = finite("B3");
  auto j  = fk.j_ring();
  auto n  = static_cast<ElementId>(fk.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      for (ElementId z = 0; z < n; ++z) {
        EXPECT_EQ(j.gamma(x, y, z), j.gamma(y, z, x));
      }
    }
  }
}

TEST(JRing, TrivialGroupAndSampledCheck) {
  auto g  = std::make_shared<FiniteGroup const>(System::from_matrix({}));
  auto fk = FiniteKL(g, WeightFunction::equal(g->system()));
  auto u  = fk.j_ring().find_unit();
  EXPECT_TRUE(u.exists);
  EXPECT_EQ(u.unit, (hx::kl::JElement{{0, Integer(1)}}));

  auto j   = finite("B2", {1, 2}).j_ring();
  auto rep = j.check_associativity(false, 7, 300, 0);
  EXPECT_FALSE(rep.exhaustive);
  EXPECT_EQ(rep.triples, 300u);
  EXPECT_EQ(rep.seed, 7u);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(j.find_unit().exists);
}
