// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_INTERVAL_HPP
#define PHOA_INTERVAL_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "phoa/core.hpp"
#include "phoa/presheaf.hpp"
#include "phoa/topos.hpp"

namespace phoa {

/// A 01-bounded meet semilattice object, optionally with joins.
///
/// zero and one are global elements 1 → I; meet and join are maps I × I → I
/// over the product indexing of topos.hpp. The order is always derived from
/// meet: a ⊑ b iff a ⊓ b = a.
struct Interval {
  Presheaf carrier;
  NatTrans zero;
  NatTrans one;
  NatTrans meet;
  std::optional<NatTrans> join;

  const FiniteCategory& base() const { return carrier.base(); }
  int size(int c) const { return carrier.size(c); }
  int bottom(int c) const { return zero(c, 0); }
  int top(int c) const { return one(c, 0); }
  int meet_at(int c, int a, int b) const { return meet(c, a * carrier.size(c) + b); }
  int join_at(int c, int a, int b) const { return (*join)(c, a * carrier.size(c) + b); }
  bool leq(int c, int a, int b) const { return meet_at(c, a, b) == a; }
  bool has_join() const { return join.has_value(); }
};

/// Assembles an interval from per-stage tables, checking shapes only.
/// meet and join tables are indexed [c][a·|I(c)| + b].
inline Interval make_interval(const Presheaf& I, const std::vector<int>& zero, const std::vector<int>& one,
                              const std::vector<std::vector<int>>& meet,
                              const std::optional<std::vector<std::vector<int>>>& join = std::nullopt) {
  const auto& C = I.base();
  auto II = product(I, I).object;
  auto one_obj = terminal(C);
  if (static_cast<int>(zero.size()) != C.object_count() || static_cast<int>(one.size()) != C.object_count())
    throw StructuralError("interval: endpoint tables need one entry per object");
  auto flat_table = [&](const std::vector<std::vector<int>>& t, const char* what) {
    if (static_cast<int>(t.size()) != C.object_count())
      throw StructuralError(std::string("interval: ") + what + " table needs one row per object");
    std::vector<int> flat;
    for (int c = 0; c < C.object_count(); ++c) {
      if (static_cast<int>(t[c].size()) != II.size(c))
        throw StructuralError(std::string("interval: ") + what + " row for " + C.object_name(c) + " has wrong length");
      flat.insert(flat.end(), t[c].begin(), t[c].end());
    }
    return NatTrans(II, I, std::move(flat));
  };
  Interval out{I, NatTrans(one_obj, I, zero), NatTrans(one_obj, I, one), flat_table(meet, "meet"), std::nullopt};
  if (join) out.join = flat_table(*join, "join");
  return out;
}

/// Naturality of every structure map.
inline CheckReport validate_interval(const Interval& I) {
  const std::string name = "interval.structure";
  const std::pair<const char*, const NatTrans*> maps[] = {
      {"zero", &I.zero}, {"one", &I.one}, {"meet", &I.meet}, {"join", I.join ? &*I.join : nullptr}};
  for (auto [label, m] : maps) {
    if (!m) continue;
    auto r = validate_nat(*m);
    if (r.is_fail()) {
      r.name = name;
      r.witness->detail = std::string(label) + ": " + r.witness->detail;
      return r;
    }
  }
  return CheckReport::passed(name);
}

namespace detail {

inline Witness law_witness(const Interval& I, const char* kind, int c, std::vector<int> elems, std::string detail) {
  return Witness{kind, c, I.base().object_name(c), std::move(elems), std::move(detail)};
}

}  // namespace detail

inline CheckReport check_semilattice(const Interval& I) {
  const std::string name = "axiom.semilattice";
  if (auto v = validate_interval(I); v.is_fail()) {
    v.name = name;
    return v;
  }
  const auto& C = I.base();
  for (int c = 0; c < C.object_count(); ++c) {
    const int n = I.size(c), z = I.bottom(c), o = I.top(c);
    for (int a = 0; a < n; ++a) {
      if (I.meet_at(c, o, a) != a)
        return CheckReport::failed(name, detail::law_witness(I, "top-unit", c, {o, a}, "1 meet a != a"));
      if (I.meet_at(c, z, a) != z)
        return CheckReport::failed(name, detail::law_witness(I, "bottom-absorbing", c, {z, a}, "0 meet a != 0"));
      if (I.meet_at(c, a, a) != a)
        return CheckReport::failed(name, detail::law_witness(I, "idempotence", c, {a}, "a meet a != a"));
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (I.meet_at(c, a, b) != I.meet_at(c, b, a))
          return CheckReport::failed(name, detail::law_witness(I, "commutativity", c, {a, b}, "a meet b != b meet a"));
        for (int d = 0; d < n; ++d)
          if (I.meet_at(c, I.meet_at(c, a, b), d) != I.meet_at(c, a, I.meet_at(c, b, d)))
            return CheckReport::failed(name, detail::law_witness(I, "associativity", c, {a, b, d}, "meet not associative"));
      }
  }
  return CheckReport::passed(name);
}

inline CheckReport check_distributive_lattice(const Interval& I) {
  const std::string name = "axiom.distributive_lattice";
  if (!I.has_join()) return CheckReport::skipped(name, "no join supplied");
  if (auto s = check_semilattice(I); !s.is_pass()) {
    s.name = name;
    return s;
  }
  const auto& C = I.base();
  for (int c = 0; c < C.object_count(); ++c) {
    const int n = I.size(c), z = I.bottom(c), o = I.top(c);
    for (int a = 0; a < n; ++a) {
      if (I.join_at(c, z, a) != a)
        return CheckReport::failed(name, detail::law_witness(I, "join-bottom-unit", c, {z, a}, "0 join a != a"));
      if (I.join_at(c, o, a) != o)
        return CheckReport::failed(name, detail::law_witness(I, "join-top-absorbing", c, {o, a}, "1 join a != 1"));
      if (I.join_at(c, a, a) != a)
        return CheckReport::failed(name, detail::law_witness(I, "join-idempotence", c, {a}, "a join a != a"));
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (I.join_at(c, a, b) != I.join_at(c, b, a))
          return CheckReport::failed(name, detail::law_witness(I, "join-commutativity", c, {a, b}, "join not commutative"));
        if (I.meet_at(c, a, I.join_at(c, a, b)) != a)
          return CheckReport::failed(name, detail::law_witness(I, "absorption", c, {a, b}, "a meet (a join b) != a"));
        if (I.join_at(c, a, I.meet_at(c, a, b)) != a)
          return CheckReport::failed(name, detail::law_witness(I, "absorption", c, {a, b}, "a join (a meet b) != a"));
        for (int d = 0; d < n; ++d) {
          if (I.join_at(c, I.join_at(c, a, b), d) != I.join_at(c, a, I.join_at(c, b, d)))
            return CheckReport::failed(name, detail::law_witness(I, "join-associativity", c, {a, b, d}, "join not associative"));
          if (I.meet_at(c, a, I.join_at(c, b, d)) != I.join_at(c, I.meet_at(c, a, b), I.meet_at(c, a, d)))
            return CheckReport::failed(name, detail::law_witness(I, "distributivity", c, {a, b, d},
                                                                  "a meet (b join c) != (a meet b) join (a meet c)"));
        }
      }
  }
  return CheckReport::passed(name);
}

/// The sieve {f: d → c | I(f)(i) = p_d} for a global point p.
inline std::vector<int> point_sieve(const Interval& I, const NatTrans& point, int c, int i) {
  const auto& C = I.base();
  std::vector<int> S;
  for (int f : C.into(c))
    if (I.carrier.act(f, i) == point(C.source(f), 0)) S.push_back(f);
  std::sort(S.begin(), S.end());
  return S;
}

inline std::vector<int> true_sieve(const Interval& I, int c, int i) { return point_sieve(I, I.one, c, i); }
inline std::vector<int> false_sieve(const Interval& I, int c, int i) { return point_sieve(I, I.zero, c, i); }

namespace detail {

inline NatTrans point_characteristic(const Interval& I, const NatTrans& point, const Omega& O) {
  const auto& C = I.base();
  std::vector<int> flat(static_cast<std::size_t>(I.carrier.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int i = 0; i < I.size(c); ++i) flat[I.carrier.offset(c) + i] = O.index_of(c, point_sieve(I, point, c, i));
  return NatTrans(I.carrier, O.object, std::move(flat));
}

}  // namespace detail

/// IsT: I → Ω.
inline NatTrans is_T(const Interval& I, const Omega& O) { return detail::point_characteristic(I, I.one, O); }
/// IsF: I → Ω.
inline NatTrans is_F(const Interval& I, const Omega& O) { return detail::point_characteristic(I, I.zero, O); }

/// Passes iff the pullback of zero along one is the initial presheaf.
inline CheckReport check_consistent(const Interval& I) {
  const std::string name = "axiom.consistent";
  auto pb = pullback(I.zero, I.one);
  for (int c = 0; c < I.base().object_count(); ++c)
    if (pb.object.size(c) > 0)
      return CheckReport::failed(name, detail::law_witness(I, "zero-equals-one", c, {I.bottom(c)}, "0 = 1 at this stage"));
  return CheckReport::passed(name);
}

/// IsT is componentwise injective, and an order embedding.
inline CheckReport check_conservative(const Interval& I) {
  const std::string name = "axiom.conservative";
  const auto& C = I.base();
  for (int c = 0; c < C.object_count(); ++c) {
    std::vector<std::vector<int>> sieves;
    for (int i = 0; i < I.size(c); ++i) sieves.push_back(true_sieve(I, c, i));
    for (int a = 0; a < I.size(c); ++a)
      for (int b = a + 1; b < I.size(c); ++b)
        if (sieves[a] == sieves[b])
          return CheckReport::failed(name, detail::law_witness(I, "same-truth-sieve", c, {a, b},
                                                                "IsT(a) = IsT(b) with a != b"));
    for (int a = 0; a < I.size(c); ++a)
      for (int b = 0; b < I.size(c); ++b) {
        const bool sub = std::includes(sieves[b].begin(), sieves[b].end(), sieves[a].begin(), sieves[a].end());
        if (sub != I.leq(c, a, b))
          return CheckReport::failed(name, detail::law_witness(I, "order-embedding", c, {a, b},
                                                                "IsT(a) <= IsT(b) disagrees with a <= b"));
      }
  }
  return CheckReport::passed(name);
}

/// IsT(a ⊔ b) = IsT(a) ∪ IsT(b).
inline CheckReport check_disjunction(const Interval& I) {
  const std::string name = "axiom.disjunction";
  if (!I.has_join()) return CheckReport::skipped(name, "no join supplied");
  const auto& C = I.base();
  for (int c = 0; c < C.object_count(); ++c)
    for (int a = 0; a < I.size(c); ++a)
      for (int b = 0; b < I.size(c); ++b) {
        auto sa = true_sieve(I, c, a), sb = true_sieve(I, c, b);
        std::vector<int> u;
        std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(u));
        if (true_sieve(I, c, I.join_at(c, a, b)) != u)
          return CheckReport::failed(name, detail::law_witness(I, "join-not-preserved", c, {a, b},
                                                                "IsT(a join b) != IsT(a) or IsT(b)"));
      }
  return CheckReport::passed(name);
}

/// IsT(a ⊓ b) = IsT(a) ∩ IsT(b). Holds for every interval.
inline CheckReport check_truth_preserves_meets(const Interval& I) {
  const std::string name = "interval.truth_meets";
  const auto& C = I.base();
  for (int c = 0; c < C.object_count(); ++c)
    for (int a = 0; a < I.size(c); ++a)
      for (int b = 0; b < I.size(c); ++b) {
        auto sa = true_sieve(I, c, a), sb = true_sieve(I, c, b);
        std::vector<int> n;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(n));
        if (true_sieve(I, c, I.meet_at(c, a, b)) != n)
          return CheckReport::failed(name, detail::law_witness(I, "meet-not-preserved", c, {a, b},
                                                                "IsT(a meet b) != IsT(a) and IsT(b)"));
      }
  return CheckReport::passed(name);
}

/// Every stage is a chain under ⊑.
inline bool is_totally_ordered(const Interval& I) {
  for (int c = 0; c < I.base().object_count(); ++c)
    for (int a = 0; a < I.size(c); ++a)
      for (int b = 0; b < I.size(c); ++b)
        if (!I.leq(c, a, b) && !I.leq(c, b, a)) return false;
  return true;
}

/// The interval pulled back to the slice over B.
inline Interval weaken_interval(const Interval& I, const Elements& el) {
  Interval out{weaken(I.carrier, el), weaken_map(I.zero, el), weaken_map(I.one, el), weaken_map(I.meet, el),
               std::nullopt};
  if (I.join) out.join = weaken_map(*I.join, el);
  return out;
}

}  // namespace phoa

#endif  // PHOA_INTERVAL_HPP
