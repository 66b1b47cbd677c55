// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "phoa/locality.hpp"
#include "phoa/modelzoo.hpp"

namespace {

using namespace phoa;

std::string fact_of(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return {};
}

TEST(Locality, EverythingIsLocalForAnIsomorphism) {
  std::mt19937 rng(3);
  auto C = truncated_simplex_category(1);
  for (int trial = 0; trial < 12; ++trial) {
    auto X = oracle::reflexive_graph(C, 1 + trial % 3, trial % 3, rng);
    auto T = oracle::reflexive_graph(C, 2, trial % 2, rng);
    EXPECT_TRUE(is_local("id", X, identity_nat(T)).is_pass());
    EXPECT_TRUE(is_local_external("id", X, identity_nat(T)).is_pass());
  }
}

TEST(Locality, TerminalIsLocalForEverything) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  auto pt = terminal(m.category);
  EXPECT_TRUE(is_local("t", pt, T.horn().inclusion()).is_pass());
  EXPECT_TRUE(is_local("t", pt, T.equivalence_collapse()).is_pass());
}

TEST(Locality, StagewiseAndExternalFormulationsAgree) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  std::mt19937 rng(17);
  std::vector<Presheaf> objects{m.presheaf("I"), m.presheaf("Lambda"), m.presheaf("Delta2"), terminal(m.category)};
  for (const auto& X : objects)
    for (const NatTrans* u : {&T.horn().inclusion(), &T.equivalence_collapse()})
      EXPECT_EQ(is_local("a", X, *u).is_pass(), is_local_external("b", X, *u).is_pass());
}

TEST(Locality, NonLocalWitnessesPointAtTheRightStage) {
  // The horn is not local for its own inclusion: the identity of Λ has no
  // filler, or two.
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  auto r = is_local("x", m.presheaf("Lambda"), T.horn().inclusion());
  if (r.is_fail()) {
    EXPECT_GE(r.witness->stage, 0);
    EXPECT_TRUE(r.witness->kind == "not-injective" || r.witness->kind == "not-surjective");
    auto e = is_local_external("x", m.presheaf("Lambda"), T.horn().inclusion());
    ASSERT_TRUE(e.is_fail());
    EXPECT_TRUE(e.witness->kind == "no-extension" || e.witness->kind == "extension-not-unique");
  }
}

TEST(Locality, LocalObjectsAreClosedUnderProducts) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  const auto& u = T.horn().inclusion();
  std::vector<Presheaf> local;
  for (const auto& n : m.names)
    if (is_local(n, m.presheaf(n), u).is_pass()) local.push_back(m.presheaf(n));
  ASSERT_GE(local.size(), 2u);
  for (const auto& A : local)
    for (const auto& B : local)
      if (A.total() * B.total() <= 40) EXPECT_TRUE(is_local("p", product(A, B).object, u).is_pass());
}

TEST(Locality, EverySetIsSegalAndRezkWhenPhoaFails) {
  // In Set with I = {0 < 1} the horn inclusion is a bijection.
  auto m = *builtin_model("set");
  IntervalTopos T(m.interval);
  EXPECT_TRUE(is_iso(T.horn().inclusion()));
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(is_segal(T, "s", detail::discrete_set(n)).is_pass());
}

TEST(Locality, BasedSegalImpliesSegal) {
  for (const auto& name : {"set", "sset2"}) {
    auto m = *builtin_model(name);
    IntervalTopos T(m.interval);
    for (const auto& n : m.names) {
      const auto& X = m.presheaf(n);
      auto b = is_based_segal(T, n, X);
      if (b.is_pass()) EXPECT_TRUE(is_segal(T, n, X).is_pass()) << name << " " << n;
    }
  }
}

TEST(Locality, RestrictionAlongConstantOpens) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  const auto& I = m.interval;
  const auto& u = T.horn().inclusion();
  auto all = restrict_along_open(I, u, constant_map(u.target(), I.one));
  EXPECT_EQ(all.map.source().sizes(), u.source().sizes());
  EXPECT_EQ(all.map.target().sizes(), u.target().sizes());
  auto none = restrict_along_open(I, u, constant_map(u.target(), I.zero));
  EXPECT_EQ(none.map.source().total(), 0);
  EXPECT_EQ(none.map.target().total(), 0);
  EXPECT_THROW(restrict_along_open(I, u, I.one), StructuralError);
}

TEST(Locality, FioreInSet) {
  auto m = *builtin_model("set");
  IntervalTopos T(m.interval);
  for (const auto& n : m.sample) {
    auto r = check_fiore_instance(T, "horn", T.horn().inclusion(), n, m.presheaf(n));
    EXPECT_TRUE(r.is_pass()) << n;
    EXPECT_EQ(fact_of(r, "verdict"), "confirmed") << n;
  }
}

TEST(Locality, ExtensionLawsInSetCountEveryMap) {
  // Maps (X⊥ or L(X)) → C in Set number |C|^(|X|+1).
  auto m = *builtin_model("set");
  IntervalTopos T(m.interval);
  for (int x = 0; x <= 3; ++x)
    for (int c = 1; c <= 3; ++c) {
      auto r = check_extension_laws(T, "x", detail::discrete_set(x), "c", detail::discrete_set(c));
      ASSERT_TRUE(r.is_pass()) << x << " " << c;
      const auto want = std::to_string(static_cast<long long>(std::pow(c, x + 1)));
      EXPECT_EQ(fact_of(r, "retraction_maps"), want);
      EXPECT_EQ(fact_of(r, "section_maps"), want);
    }
}

TEST(Locality, TildeOfAConstantIsConstant) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  const auto& X = m.presheaf("I");
  const auto& target = m.presheaf("I");
  const auto& S = *T.scone(X);
  for (const auto& p : {m.interval.zero, m.interval.one}) {
    auto t = tilde_extension(T, X, target, constant_map(S.object, p));
    EXPECT_TRUE(t.report.is_pass());
    EXPECT_EQ(t.map, constant_map(T.lift(X)->object, p));
  }
}

TEST(Locality, ExtensionLawsInSSet) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  auto r = check_extension_laws(T, "point", terminal(m.category), "I", m.presheaf("I"));
  EXPECT_TRUE(r.is_pass());
  auto s = check_extension_laws(T, "I", m.presheaf("I"), "I", m.presheaf("I"));
  EXPECT_TRUE(s.is_pass());
}

TEST(Locality, GuardedTurnsBudgetIntoSkips) {
  auto r = guarded("x", []() -> CheckReport { throw BudgetExceeded("too big"); });
  EXPECT_EQ(r.status, Status::skip);
  EXPECT_TRUE(skipped_for_budget(r));
  auto p = guarded("y", []() -> CheckReport { throw PreconditionError("no"); });
  EXPECT_EQ(p.status, Status::skip);
  EXPECT_FALSE(skipped_for_budget(p));
  auto nested = CheckReport::skipped("t", "segal(X): budget exceeded: nodes");
  EXPECT_TRUE(skipped_for_budget(nested));
}

TEST(Locality, PropertyReportsAreNamedAndCached) {
  auto m = *builtin_model("sset2");
  IntervalTopos T(m.interval);
  std::vector<NamedObject> sample{{"I", m.presheaf("I")}};
  auto a = check_property(T, "segal", "I", m.presheaf("I"), sample);
  auto b = check_property(T, "segal", "J", m.presheaf("I"), sample);
  EXPECT_EQ(a.name, "segal(I)");
  EXPECT_EQ(b.name, "segal(J)");
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(check_property(T, "rezk_well_complete", "I", m.presheaf("I"), sample).name, "rezk_well_complete(I)");
  EXPECT_THROW(check_property(T, "nonsense", "I", m.presheaf("I"), sample), ReferenceError);
}

TEST(Locality, TheoremsNeverFailOnTheZoo) {
  for (const auto& name : {"set", "degenerate", "sset2"}) {
    auto m = *builtin_model(name);
    IntervalTopos T(m.interval);
    std::vector<NamedObject> sample;
    for (const auto& n : m.sample) sample.emplace_back(n, m.presheaf(n));
    for (const auto& r : theorem_suite(T, sample, 1)) EXPECT_FALSE(r.is_fail()) << name << " " << r.name;
  }
}

}  // namespace
