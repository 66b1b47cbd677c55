// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phoa/modelzoo.hpp"
#include "phoa/shapes.hpp"

namespace {

using namespace phoa;

/// Stage sizes of the walking equivalence when I(c) is the chain 0 < … < m:
/// the glued diagram pt ← I → Δ² ← I → Δ² ← I → pt quotiented by hand.
int walking_equivalence_oracle(int m) {
  const int ni = m + 1;
  std::vector<std::pair<int, int>> tri;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= i; ++j) tri.emplace_back(i, j);
  const int nt = static_cast<int>(tri.size());
  auto tri_index = [&](int i, int j) {
    for (int k = 0; k < nt; ++k)
      if (tri[k] == std::make_pair(i, j)) return k;
    return -1;
  };
  // Blocks: x, e1, rho, f, sigma, e5, y.
  const int x = 0, e1 = 1, rho = e1 + ni, f = rho + nt, sigma = f + ni, e5 = sigma + nt, y = e5 + ni;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= m; ++i) {
    pairs.emplace_back(e1 + i, x);
    pairs.emplace_back(e1 + i, rho + tri_index(i, i));
    pairs.emplace_back(f + i, rho + tri_index(i, 0));
    pairs.emplace_back(f + i, sigma + tri_index(m, i));
    pairs.emplace_back(e5 + i, sigma + tri_index(i, i));
    pairs.emplace_back(e5 + i, y);
  }
  return oracle::count_classes(y + 1, pairs);
}

TEST(Shapes, SimplexSizesAreBinomials) {
  // I(c) is a chain with c + 2 elements, so Δⁿ(c) has C(c+n+1, n) elements.
  auto m = *builtin_model("sset3");
  for (int n = 1; n <= 3; ++n) {
    auto S = simplex(m.interval, n);
    EXPECT_TRUE(validate_presheaf(S.object()).is_pass());
    for (int c = 0; c <= 3; ++c) EXPECT_EQ(S.object().size(c), static_cast<int>(oracle::binomial(c + n + 1, n)));
  }
  EXPECT_EQ(simplex(m.interval, 2).object().sizes(), (std::vector<int>{3, 6, 10, 15}));
}

TEST(Shapes, SimplexTuplesDescend) {
  auto m = *builtin_model("sset2");
  auto S = simplex(m.interval, 3);
  for (int c = 0; c <= 2; ++c)
    for (int x = 0; x < S.object().size(c); ++x) {
      auto t = S.tuple(c, x);
      for (std::size_t k = 1; k < t.size(); ++k) EXPECT_TRUE(m.interval.leq(c, t[k], t[k - 1]));
      EXPECT_EQ(S.find(c, t), x);
    }
}

TEST(Shapes, SimplexVerticesAreGlobalElements) {
  auto m = *builtin_model("sset3");
  auto S = simplex(m.interval, 2);
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(validate_nat(simplex_vertex(m.interval, S, k)).is_pass());
}

TEST(Shapes, HornSizes) {
  // Pairs j ⊑ i with j = 0 or i = 1: 2(c + 2) - 1.
  auto m = *builtin_model("sset3");
  auto tri = simplex(m.interval, 2);
  auto h = horn(m.interval, tri);
  for (int c = 0; c <= 3; ++c) EXPECT_EQ(h.object().size(c), 2 * c + 3);
  EXPECT_TRUE(is_mono(h.inclusion()));
  EXPECT_TRUE(is_iso(h.glued_to_formula));
  EXPECT_EQ(compose(tri.sub.inclusion, compose(h.inclusion(), h.glued_to_formula)),
            compose(tri.sub.inclusion, h.glued_to_triangle));
}

TEST(Shapes, HornInSetHasThreeElements) {
  auto m = *builtin_model("set");
  auto tri = simplex(m.interval, 2);
  EXPECT_EQ(horn(m.interval, tri).object().sizes(), (std::vector<int>{3}));
}

TEST(Shapes, WalkingEquivalenceMatchesQuotientOracle) {
  auto m = *builtin_model("sset3");
  auto tri = simplex(m.interval, 2);
  auto E = walking_equivalence(m.interval, tri);
  EXPECT_TRUE(validate_presheaf(E.object()).is_pass());
  for (int c = 0; c <= 3; ++c) EXPECT_EQ(E.object().size(c), walking_equivalence_oracle(c + 1)) << c;
  EXPECT_EQ(E.object().sizes(), (std::vector<int>{2, 5, 10, 17}));
}

TEST(Shapes, WalkingEquivalenceInSetHasTwoPoints) {
  // The diagram never identifies x with y when I = {0 < 1}.
  auto m = *builtin_model("set");
  auto E = walking_equivalence(m.interval, simplex(m.interval, 2));
  EXPECT_EQ(walking_equivalence_oracle(1), 2);
  EXPECT_EQ(E.object().sizes(), (std::vector<int>{2}));
  EXPECT_NE(E.x()(0, 0), E.y()(0, 0));
}

TEST(Shapes, DisplayMapsAreNatural) {
  auto m = *builtin_model("sset2");
  auto tri = simplex(m.interval, 2);
  auto h = horn(m.interval, tri);
  auto d = display(m.interval, tri, h);
  EXPECT_TRUE(validate_nat(d.triangle).is_pass());
  EXPECT_TRUE(validate_nat(d.horn).is_pass());
  EXPECT_EQ(compose(d.triangle, h.inclusion()), d.horn);
  // The fibre over 0 is the single triangle (0, 0).
  EXPECT_EQ(fibre_over(d.triangle, m.interval.zero).sizes(), (std::vector<int>{1, 1, 1}));
}

TEST(Shapes, GenericHornIsAMonoOverElements) {
  auto m = *builtin_model("sset2");
  auto tri = simplex(m.interval, 2);
  auto h = horn(m.interval, tri);
  auto el = elements_category(m.interval.carrier);
  auto g = generic_horn(m.interval, tri, h, el);
  EXPECT_TRUE(validate_presheaf(g.triangle).is_pass());
  EXPECT_TRUE(validate_presheaf(g.horn).is_pass());
  EXPECT_TRUE(is_mono(g.inclusion));
}

}  // namespace
