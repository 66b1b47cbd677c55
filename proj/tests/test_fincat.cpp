// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phoa/fincat.hpp"

namespace {

using namespace phoa;

TEST(FinCat, TerminalCategoryHasOneIdentity) {
  auto C = terminal_category();
  EXPECT_EQ(C.object_count(), 1);
  EXPECT_EQ(C.morphism_count(), 1);
  EXPECT_TRUE(validate_category(C).is_pass());
}

TEST(FinCat, TruncatedSimplexHomSizesAreBinomials) {
  // |hom([a],[b])| = C(a+b+1, a+1), the number of monotone maps.
  for (int n = 0; n <= 3; ++n) {
    auto C = truncated_simplex_category(n);
    ASSERT_TRUE(validate_category(C).is_pass()) << n;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        EXPECT_EQ(C.hom(a, b).size(), oracle::binomial(a + b + 1, a + 1)) << a << "->" << b;
  }
}

TEST(FinCat, SimplexMapComposesAsFunctions) {
  auto C = truncated_simplex_category(2);
  for (int g = 0; g < C.morphism_count(); ++g)
    for (int f = 0; f < C.morphism_count(); ++f) {
      if (C.target(f) != C.source(g)) continue;
      auto mf = simplex_map(C, f), mg = simplex_map(C, g), mgf = simplex_map(C, C.compose(g, f));
      for (std::size_t x = 0; x < mf.size(); ++x) EXPECT_EQ(mgf[x], mg[mf[x]]);
    }
}

TEST(FinCat, WalkingArrowIsThin) {
  auto C = walking_arrow();
  EXPECT_EQ(C.morphism_count(), 3);
  EXPECT_EQ(C.hom(0, 1).size(), 1u);
  EXPECT_EQ(C.hom(1, 0).size(), 0u);
}

TEST(FinCat, PosetLawViolationsNameTheElements) {
  EXPECT_THROW(poset_as_category({{true, true}, {true, true}}), LawError);
  try {
    poset_as_category({{true, true, false}, {false, true, true}, {false, false, true}});
    FAIL() << "transitivity violation accepted";
  } catch (const LawError& e) {
    EXPECT_NE(std::string(e.what()).find("(0,1,2)"), std::string::npos);
  }
}

TEST(FinCat, BrokenAssociativityIsReported) {
  // Two parallel arrows a, b: 0 → 1 and an endomorphism e of 1 with e∘a = b
  // and e∘b = a, but e∘e = e: then (e∘e)∘a = b while e∘(e∘a) = a.
  std::vector<Morphism> mors{{"id0", 0, 0}, {"id1", 1, 1}, {"a", 0, 1}, {"b", 0, 1}, {"e", 1, 1}};
  std::vector<Composite> table{{0, 0, 0}, {1, 1, 1}, {2, 0, 2}, {3, 0, 3}, {1, 2, 2}, {1, 3, 3},
                               {4, 1, 4}, {1, 4, 4}, {4, 2, 3}, {4, 3, 2}, {4, 4, 4}};
  FiniteCategory C({"0", "1"}, mors, {0, 1}, table);
  auto r = validate_category(C);
  ASSERT_TRUE(r.is_fail());
  EXPECT_EQ(r.witness->kind, "associativity");
}

TEST(FinCat, StructuralErrorsOnBadTables) {
  EXPECT_THROW(FiniteCategory({"0"}, {{"id", 0, 3}}, {0}, std::vector<Composite>{{0, 0, 0}}), StructuralError);
  EXPECT_THROW(truncated_simplex_category(5), BudgetExceeded);
}

}  // namespace
