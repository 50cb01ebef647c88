#include <memory>
#include <set>

#include <gtest/gtest.h>

#include "hx/positivity.hpp"
#include "oracles.hpp"

using hx::LaurentPoly;
using hx::coxeter::ElementId;
using hx::coxeter::FiniteGroup;
using hx::coxeter::System;
using hx::hecke::FiniteHecke;
using hx::hecke::HeckeAlgebra;
using hx::hecke::WeightFunction;
namespace pos = hx::positivity;

namespace {

  std::shared_ptr<FiniteGroup const> group(std::string const& label) {
    return std::make_shared<FiniteGroup const>(System::from_label(label));
  }

  FiniteHecke equal_hecke(std::string const& label) {
    auto g = group(label);
    return FiniteHecke(g, WeightFunction::equal(g->system()));
  }

}  // namespace

TEST(Trace, Identity) {
  for (auto label : {"A1", "A3", "B3"}) {
    auto h = equal_hecke(label);
    EXPECT_EQ(pos::n_trace(h, 0), LaurentPoly(static_cast<int>(h.size())));
  }
}

TEST(Trace, A1AndA2) {
  auto a1 = equal_hecke("A1");
  auto n  = pos::n_trace(a1, 1);
  EXPECT_EQ(n, LaurentPoly::v(4) + 1);
  EXPECT_EQ(n.eval(1), 2);

  auto a2  = equal_hecke("A2");
  auto cox = a2.group().index(a2.group().system().normal_form({0, 1}));
  auto nc  = pos::n_trace(a2, cox);
  EXPECT_EQ(nc, LaurentPoly::v(8) + LaurentPoly::v(4) + 1);
  auto s   = a2.group().index(a2.group().system().generator(0));
  EXPECT_EQ(pos::n_trace(a2, s),
            LaurentPoly::monomial(2, 4) - LaurentPoly::monomial(2, 2) + 2);
}

TEST(Trace, DenseAgreesWithSparseOnMinimalLengthElements) {
  for (auto label : {"A3", "B3"}) {
    auto         h = equal_hecke(label);
    HeckeAlgebra alg(h.group().system(), h.weights());
    for (auto const& cls : hx::coxeter::conjugacy_classes(h.group())) {
      for (auto const& w : cls.min_length_set) {
        EXPECT_EQ(pos::n_trace(h, h.group().index(w)),
                  hx::oracle::trace_sparse(alg, w))
            << label << " " << w.to_string();
      }
    }
  }
}

TEST(Trace, ParallelMatchesSerial) {
  auto h = equal_hecke("B3");
  for (ElementId w = 0; w < h.size(); w += 7) {
    EXPECT_EQ(pos::n_trace(h, w, 1), pos::n_trace(h, w, 3));
  }
}

TEST(Classify, TypeAHasOnlyIdentityAndCoxeter) {
  for (auto label : {"A2", "A3", "A4"}) {
    auto reports = pos::classify_positive(System::from_label(label));
    std::size_t positive = 0;
    for (auto const& r : reports) {
      EXPECT_TRUE(r.checks.constant_on_min);
      EXPECT_TRUE(r.checks.in_even);
      EXPECT_TRUE(r.checks.centralizer_match);
      if (r.positive) {
        ++positive;
        EXPECT_TRUE(r.is_identity || r.is_coxeter) << label;
      }
      if (r.is_identity || r.is_coxeter) {
        EXPECT_TRUE(r.positive) << label;
      }
    }
    EXPECT_EQ(positive, 2u) << label;
  }
}

TEST(Classify, B2Fixtures) {
  auto reports = pos::classify_positive(System::from_label("B2"));
  ASSERT_EQ(reports.size(), 5u);
  std::set<std::string> positive;
  for (auto const& r : reports) {
    if (r.positive) {
      positive.insert(r.representative.to_string());
    }
    if (r.contains_longest) {
      EXPECT_EQ(r.n_poly, LaurentPoly::v(16) + LaurentPoly::monomial(6, 8) + 1);
    }
    if (r.is_coxeter) {
      EXPECT_EQ(r.n_poly, LaurentPoly::v(8) + LaurentPoly::monomial(2, 4) + 1);
    }
  }
  EXPECT_EQ(positive, (std::set<std::string>{"e", "0,1", "0,1,0,1"}));
}

TEST(Classify, GatingAndOptions) {
  auto g = group("B2");
  FiniteHecke unequal(g, WeightFunction::make(g->system(), {1, 2}));
  EXPECT_THROW(pos::n_trace(unequal, 1), hx::GatingError);
  EXPECT_THROW(pos::classify_positive(System::from_label("~A2")), hx::GatingError);

  pos::Options opts;
  opts.member_limit = 1;
  std::vector<std::string> messages;
  opts.progress = [&](std::string const& m) { messages.push_back(m); };
  auto limited  = pos::classify_positive(group("B3"), opts);
  auto full     = pos::classify_positive(group("B3"));
  ASSERT_EQ(limited.size(), full.size());
  EXPECT_EQ(messages.size(), full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    EXPECT_EQ(limited[i].evaluated, 1u);
    EXPECT_EQ(full[i].evaluated, full[i].min_length_count);
    EXPECT_EQ(limited[i].n_poly, full[i].n_poly);
    EXPECT_EQ(limited[i].positive, full[i].positive);
  }
}

TEST(Classify, ExpiredTimeBudgetTracesOneMemberPerClass) {
  pos::Options opts;
  opts.time_budget = 0;
  auto fast = pos::classify_positive(group("B3"), opts);
  auto full = pos::classify_positive(group("B3"));
  ASSERT_EQ(fast.size(), full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    EXPECT_EQ(fast[i].evaluated, 1u);
    EXPECT_EQ(fast[i].n_poly, full[i].n_poly);
  }
  pos::Options generous;
  generous.time_budget = 3600;
  for (auto const& r : pos::classify_positive(group("B3"), generous)) {
    EXPECT_EQ(r.evaluated, r.min_length_count);
  }
}

TEST(Classify, JobsDoNotChangeResults) {
  pos::Options two;
  two.jobs = 2;
  auto a   = pos::classify_positive(group("D4"));
  auto b   = pos::classify_positive(group("D4"), two);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].representative, b[i].representative);
    EXPECT_EQ(a[i].n_poly, b[i].n_poly);
  }
}
