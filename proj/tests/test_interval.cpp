// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "phoa/interval.hpp"
#include "phoa/modelzoo.hpp"

namespace {

using namespace phoa;

Model zoo(const std::string& name) { return *builtin_model(name); }

TEST(Interval, ZooIntervalsAreDistributiveLattices) {
  for (const auto& name : {"set", "degenerate", "sset2", "sset3", "chain2", "chain4"}) {
    auto m = zoo(name);
    EXPECT_TRUE(validate_interval(m.interval).is_pass()) << name;
    EXPECT_TRUE(check_semilattice(m.interval).is_pass()) << name;
    EXPECT_TRUE(check_distributive_lattice(m.interval).is_pass()) << name;
  }
}

TEST(Interval, OrderIsAPartialOrderAtEveryStage) {
  const auto I = zoo("sset3").interval;
  for (int c = 0; c < I.base().object_count(); ++c) {
    const int n = I.size(c);
    for (int a = 0; a < n; ++a) {
      EXPECT_TRUE(I.leq(c, a, a));
      EXPECT_TRUE(I.leq(c, I.bottom(c), a));
      EXPECT_TRUE(I.leq(c, a, I.top(c)));
      for (int b = 0; b < n; ++b) {
        if (a != b) EXPECT_FALSE(I.leq(c, a, b) && I.leq(c, b, a));
        for (int d = 0; d < n; ++d)
          if (I.leq(c, a, b) && I.leq(c, b, d)) EXPECT_TRUE(I.leq(c, a, d));
      }
    }
  }
}

TEST(Interval, MeetTableThatIsNotIdempotentIsRejected) {
  auto two = zoo("set").interval;
  auto bad = make_interval(two.carrier, {0}, {1}, {{0, 0, 0, 0}});
  auto r = check_semilattice(bad);
  ASSERT_TRUE(r.is_fail());
  EXPECT_FALSE(r.witness->kind.empty());
}

TEST(Interval, MalformedTablesThrow) {
  auto two = zoo("set").interval;
  EXPECT_THROW(make_interval(two.carrier, {0, 0}, {1}, {{0, 0, 0, 1}}), StructuralError);
  EXPECT_THROW(make_interval(two.carrier, {0}, {1}, {{0, 0, 1}}), StructuralError);
}

TEST(Interval, ConsistencyFailsOnlyForTheDegenerateInterval) {
  EXPECT_TRUE(check_consistent(zoo("set").interval).is_pass());
  EXPECT_TRUE(check_consistent(zoo("sset3").interval).is_pass());
  EXPECT_TRUE(check_consistent(zoo("chain3").interval).is_pass());
  EXPECT_TRUE(check_consistent(zoo("degenerate").interval).is_fail());
}

TEST(Interval, ConservativityFailsForLongerChains) {
  EXPECT_TRUE(check_conservative(zoo("set").interval).is_pass());
  EXPECT_TRUE(check_conservative(zoo("sset3").interval).is_pass());
  auto r = check_conservative(zoo("chain2").interval);
  ASSERT_TRUE(r.is_fail());
  EXPECT_EQ(r.witness->elements, (std::vector<int>{0, 1}));
}

TEST(Interval, DisjunctionAndTruthMeets) {
  for (const auto& name : {"set", "sset2", "sset3", "chain3"}) {
    auto I = zoo(name).interval;
    EXPECT_TRUE(check_disjunction(I).is_pass()) << name;
    EXPECT_TRUE(check_truth_preserves_meets(I).is_pass()) << name;
  }
}

TEST(Interval, IsTClassifiesTheTopPoint) {
  auto I = zoo("sset3").interval;
  auto O = omega(I.base());
  auto t = is_T(I, O), f = is_F(I, O);
  EXPECT_TRUE(validate_nat(t).is_pass());
  EXPECT_TRUE(validate_nat(f).is_pass());
  for (int c = 0; c < I.base().object_count(); ++c) {
    const int maximal = O.object.size(c) - 1;
    for (int i = 0; i < I.size(c); ++i) {
      EXPECT_EQ(t(c, i) == maximal, i == I.top(c));
      EXPECT_EQ(f(c, i) == maximal, i == I.bottom(c));
      EXPECT_NE(t(c, i) == maximal && f(c, i) == maximal, true);
    }
  }
}

TEST(Interval, WeakeningKeepsTheLaws) {
  auto I = zoo("sset2").interval;
  auto el = elements_category(I.carrier);
  auto W = weaken_interval(I, el);
  EXPECT_TRUE(validate_interval(W).is_pass());
  EXPECT_TRUE(check_distributive_lattice(W).is_pass());
  EXPECT_TRUE(check_consistent(W).is_pass());
}

TEST(Interval, TotalOrderDetection) {
  EXPECT_TRUE(is_totally_ordered(zoo("set").interval));
  EXPECT_TRUE(is_totally_ordered(zoo("chain3").interval));
  EXPECT_TRUE(is_totally_ordered(zoo("sset3").interval));
}

}  // namespace
