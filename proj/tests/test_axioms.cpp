// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phoa/axioms.hpp"
#include "phoa/locality.hpp"
#include "phoa/modelzoo.hpp"

namespace {

using namespace phoa;

std::string fact_of(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return {};
}

/// |I^{Δⁿ}(c)| when I(c) is the chain [c+1]: monotone maps [c] × [n] → [1].
std::string phoa_levels_oracle(int n, int stages) {
  std::string out;
  for (int c = 0; c < stages; ++c) {
    if (c) out += ",";
    out += std::to_string(oracle::count_monotone(oracle::product(oracle::chain(c + 1), oracle::chain(n + 1)), oracle::chain(2)));
  }
  return out;
}

TEST(Axioms, PhoaHoldsInTruncatedSimplicialSets) {
  auto m = *builtin_model("sset3");
  for (int n = 1; n <= 3; ++n) {
    auto r = check_phoa(m.interval, n);
    EXPECT_TRUE(r.is_pass()) << n;
    EXPECT_EQ(fact_of(r, "exponential_levels"), phoa_levels_oracle(n, 4)) << n;
  }
  EXPECT_EQ(fact_of(check_phoa(m.interval, 1), "exponential_levels"), "3,6,10,15");
  EXPECT_EQ(fact_of(check_phoa(m.interval, 2), "exponential_levels"), "4,10,20,35");
  EXPECT_EQ(fact_of(check_phoa(m.interval, 3), "exponential_levels"), "5,15,35,70");
}

TEST(Axioms, PhoaFailsInSetWithTheSwap) {
  auto m = *builtin_model("set");
  auto r = check_phoa(m.interval, 1);
  ASSERT_TRUE(r.is_fail());
  EXPECT_EQ(r.witness->kind, "non-monotone");
  EXPECT_EQ(r.witness->elements, (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(r.witness->detail, "table at identity: 1,0");
  EXPECT_EQ(fact_of(r, "exponential_levels"), "4");
}

TEST(Axioms, PhoaDimensionOutOfRangeIsSkipped) {
  auto m = *builtin_model("set");
  EXPECT_EQ(check_phoa(m.interval, 0).status, Status::skip);
  EXPECT_EQ(check_phoa(m.interval, kMaxSimplexDimension).status, Status::skip);
}

TEST(Axioms, InterpolationAgreesWithPhoaOne) {
  for (const auto& name : {"set", "degenerate", "chain2", "chain3", "sset2", "sset3"}) {
    auto m = *builtin_model(name);
    EXPECT_EQ(check_phoa(m.interval, 1).is_pass(), check_phoa_interpolation(m.interval).is_pass()) << name;
  }
}

TEST(Axioms, SSetProfile) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  const auto& ax = T.axioms();
  for (const auto& r : ax.reports) EXPECT_TRUE(r.is_pass()) << r.name;
  EXPECT_TRUE(ax.phoa());
  ASSERT_TRUE(ax.sums.sum.has_value());
  EXPECT_TRUE(validate_nat(*ax.sums.sum).is_pass());
}

TEST(Axioms, SetProfile) {
  auto m = *builtin_model("set");
  IntervalTopos T(m.interval);
  const auto& ax = T.axioms();
  EXPECT_TRUE(ax.holds("axiom.consistent"));
  EXPECT_TRUE(ax.holds("axiom.conservative"));
  EXPECT_TRUE(ax.holds("axiom.internal_sums"));
  EXPECT_TRUE(ax.holds("axiom.factors_meets"));
  EXPECT_FALSE(ax.phoa());
  EXPECT_EQ(ax.report("axiom.relative_phoa").status, Status::skip);
}

TEST(Axioms, ChainTwoIsNotConservative) {
  auto m = *builtin_model("chain2");
  IntervalTopos T(m.interval);
  const auto& r = T.axioms().report("axiom.conservative");
  ASSERT_TRUE(r.is_fail());
  EXPECT_EQ(r.witness->elements, (std::vector<int>{0, 1}));
}

TEST(Axioms, DegenerateIntervalIsInconsistent) {
  auto m = *builtin_model("degenerate");
  IntervalTopos T(m.interval);
  EXPECT_TRUE(T.axioms().report("axiom.consistent").is_fail());
}

TEST(Axioms, InternalSumClassifiesTheMarkedPoint) {
  auto m = *builtin_model("sset2");
  const auto& I = m.interval;
  auto LI = lift(I, I.carrier);
  auto sums = find_internal_sums(I, LI);
  ASSERT_TRUE(sums.report.is_pass());
  for (const auto& s : sums.all) {
    EXPECT_TRUE(validate_nat(s).is_pass());
    EXPECT_EQ(compose(s, LI.unit), identity_nat(I.carrier));
  }
  EXPECT_TRUE(check_factors_meets(I, LI, sums).is_pass());
}

TEST(Axioms, RestrictionReportOnIdentityIsIso) {
  auto m = *builtin_model("sset2");
  const auto& X = m.presheaf("Lambda");
  EXPECT_TRUE(restriction_report("id", X, identity_nat(m.presheaf("I"))).is_pass());
}

}  // namespace
