// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "phoa/constructions.hpp"
#include "phoa/modelzoo.hpp"

namespace {

using namespace phoa;

TEST(Constructions, LiftOfPointIsTheInterval) {
  for (const auto& name : {"set", "chain3", "sset2", "sset3"}) {
    auto m = *builtin_model(name);
    auto L = lift(m.interval, terminal(m.category));
    EXPECT_TRUE(validate_presheaf(L.object).is_pass());
    EXPECT_TRUE(isomorphic(L.object, m.interval.carrier)) << name;
  }
}

TEST(Constructions, SconeOfPointIsTheInterval) {
  for (const auto& name : {"set", "sset2", "sset3"}) {
    auto m = *builtin_model(name);
    auto S = scone(m.interval, terminal(m.category));
    EXPECT_TRUE(isomorphic(S.object, m.interval.carrier)) << name;
  }
}

TEST(Constructions, LiftAndSconeInSetAddOnePoint) {
  auto m = *builtin_model("set");
  for (int n = 0; n <= 5; ++n) {
    auto X = detail::discrete_set(n);
    auto L = lift(m.interval, X);
    auto S = scone(m.interval, X);
    EXPECT_EQ(L.object.size(0), n + 1);
    EXPECT_EQ(S.object.size(0), n + 1);
    EXPECT_TRUE(is_iso(comparison(m.interval, S, L)));
  }
}

TEST(Constructions, PartialMapsInSetAreCountedByPowers) {
  // A partial map n ⇀ k picks, for each of the n points, a value or nothing.
  auto m = *builtin_model("set");
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k <= 3; ++k) {
      auto Y = detail::discrete_set(n), X = detail::discrete_set(k);
      const auto want = static_cast<std::size_t>(std::pow(k + 1, n));
      EXPECT_EQ(count_partial_maps(m.interval, Y, X), want);
      EXPECT_EQ(oracle::count_nats(Y, lift(m.interval, X).object), want);
    }
}

TEST(Constructions, LiftRepresentsPartialMaps) {
  auto m = *builtin_model("sset2");
  const auto& I = m.interval;
  for (const auto& y : {"I", "Lambda"})
    for (const auto& x : {"I", "Lambda", "Delta2"}) {
      const auto& Y = m.presheaf(y);
      const auto& X = m.presheaf(x);
      EXPECT_EQ(count_nats(Y, lift(I, X).object), count_partial_maps(I, Y, X)) << y << " -> " << x;
    }
}

TEST(Constructions, UnitIsMonoWithTotalSupport) {
  auto m = *builtin_model("sset3");
  const auto& I = m.interval;
  for (const auto& x : {"I", "Lambda"}) {
    auto L = lift(I, m.presheaf(x));
    EXPECT_TRUE(is_mono(L.unit));
    EXPECT_EQ(compose(L.support, L.unit), constant_map(L.value, I.one));
  }
}

TEST(Constructions, LiftIsFunctorial) {
  auto m = *builtin_model("sset2");
  const auto& I = m.interval;
  const auto& A = m.presheaf("Lambda");
  const auto& B = m.presheaf("Delta2");
  const auto& D = m.presheaf("I");
  auto LA = lift(I, A), LB = lift(I, B), LD = lift(I, D);
  EXPECT_EQ(lift_map(identity_nat(A), LA, LA), identity_nat(LA.object));
  auto fs = enumerate_nats(A, B);
  auto gs = enumerate_nats(B, D);
  ASSERT_FALSE(fs.empty());
  ASSERT_FALSE(gs.empty());
  for (std::size_t k = 0; k < std::min<std::size_t>(fs.size(), 6); ++k)
    for (std::size_t l = 0; l < std::min<std::size_t>(gs.size(), 6); ++l) {
      const auto& f = fs[k];
      const auto& g = gs[l];
      EXPECT_EQ(lift_map(compose(g, f), LA, LD), compose(lift_map(g, LB, LD), lift_map(f, LA, LB)));
      // η is natural.
      EXPECT_EQ(compose(lift_map(f, LA, LB), LA.unit), compose(LB.unit, f));
    }
}

TEST(Constructions, SconeStructureMaps) {
  auto m = *builtin_model("sset2");
  const auto& I = m.interval;
  for (const auto& x : {"I", "Lambda", "Delta2"}) {
    auto S = scone(I, m.presheaf(x));
    EXPECT_TRUE(validate_presheaf(S.object).is_pass());
    EXPECT_EQ(compose(S.support, S.bottom), I.zero);
    EXPECT_EQ(compose(S.support, S.inclusion), constant_map(S.inclusion.source(), I.one));
    EXPECT_TRUE(is_mono(S.inclusion));
    EXPECT_TRUE(is_iso(S.to_fibrewise)) << x;
  }
}

TEST(Constructions, SierpinskiDataSquareIsAPullback) {
  auto m = *builtin_model("sset2");
  const auto& I = m.interval;
  for (const auto& [x, c] : {std::pair{"I", "I"}, {"I", "Lambda"}, {"Lambda", "I"}, {"I", "Delta2"}}) {
    auto S = scone(I, m.presheaf(x));
    EXPECT_TRUE(sierp_data_square(I, m.presheaf(c), S).is_pass()) << x << " " << c;
  }
}

TEST(Constructions, JoinWithSubterminals) {
  auto m = *builtin_model("sset2");
  const auto& X = m.presheaf("Lambda");
  auto with_empty = join_types(initial(m.category), X);
  EXPECT_TRUE(isomorphic(with_empty.object, X));
  auto with_point = join_types(terminal(m.category), X);
  EXPECT_TRUE(isomorphic(with_point.object, terminal(m.category)));
  EXPECT_THROW(join_types(X, X), PreconditionError);
}

}  // namespace
