// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_CONSTRUCTIONS_HPP
#define PHOA_CONSTRUCTIONS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phoa/core.hpp"
#include "phoa/interval.hpp"
#include "phoa/presheaf.hpp"
#include "phoa/topos.hpp"

namespace phoa {

namespace detail {

/// Position of each morphism inside the `into` list of its target.
inline std::vector<int> into_positions(const FiniteCategory& C) {
  std::vector<int> pos(static_cast<std::size_t>(C.morphism_count()), -1);
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    for (int k = 0; k < static_cast<int>(in.size()); ++k) pos[in[k]] = k;
  }
  return pos;
}

/// The sieve S on c as a subpresheaf of y(c).
inline Subobject sieve_subobject(const FiniteCategory& C, int c, const std::vector<int>& S) {
  auto y = yoneda(C, c);
  return make_subobject(y, [&](int d, int h) {
    return std::binary_search(S.begin(), S.end(), C.hom(d, c)[h]);
  });
}

}  // namespace detail

/// L(X) = Σ_i X^{IsT(i)}. An element at stage c is a support i ∈ I(c) and a
/// matching family on the sieve IsT(i), stored over the positions of
/// into(c) with -1 off the sieve.
struct Lifted {
  Presheaf object;
  NatTrans unit;     // η: X → L(X)
  NatTrans support;  // L(X) → I
  Presheaf value;    // X
  std::vector<std::vector<std::pair<int, std::vector<int>>>> elements;
  std::vector<std::map<std::pair<int, std::vector<int>>, int>> lookup;

  int index_of(int c, int support_elem, const std::vector<int>& family) const {
    auto it = lookup[c].find({support_elem, family});
    if (it == lookup[c].end()) throw InternalError("lift: no such partial element");
    return it->second;
  }
  int support_of(int c, int k) const { return elements[c][k].first; }
  const std::vector<int>& family_of(int c, int k) const { return elements[c][k].second; }
};

inline Lifted lift(const Interval& I, const Presheaf& X) {
  require_same_base(I.carrier, X, "lift");
  const auto& C = I.base();
  const auto into_pos = detail::into_positions(C);
  Lifted L;
  L.value = X;
  L.elements.resize(C.object_count());
  L.lookup.resize(C.object_count());
  std::size_t total = 0;
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    std::map<std::vector<int>, std::vector<std::vector<int>>> families_by_sieve;
    for (int i = 0; i < I.size(c); ++i) {
      auto S = true_sieve(I, c, i);
      auto it = families_by_sieve.find(S);
      if (it == families_by_sieve.end()) {
        auto sub = detail::sieve_subobject(C, c, S);
        std::vector<std::vector<int>> fams;
        for (const auto& a : *all_nats(sub.domain, X)) {
          std::vector<int> fam(in.size(), -1);
          for (int d = 0; d < C.object_count(); ++d)
            for (int k = 0; k < sub.domain.size(d); ++k) {
              const int h = C.hom(d, c)[sub.inclusion(d, k)];
              fam[into_pos[h]] = a[sub.domain.offset(d) + k];
            }
          fams.push_back(std::move(fam));
        }
        std::sort(fams.begin(), fams.end());
        it = families_by_sieve.emplace(S, std::move(fams)).first;
      }
      for (const auto& fam : it->second) {
        L.lookup[c].emplace(std::make_pair(i, fam), static_cast<int>(L.elements[c].size()));
        L.elements[c].emplace_back(i, fam);
      }
    }
    total += L.elements[c].size();
    require_element_budget(total, "lift");
  }
  std::vector<int> sizes(C.object_count());
  for (int c = 0; c < C.object_count(); ++c) sizes[c] = static_cast<int>(L.elements[c].size());
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int g = 0; g < C.morphism_count(); ++g) {
    const int d = C.source(g), c = C.target(g);
    auto in_d = C.into(d);
    for (const auto& [i, fam] : L.elements[c]) {
      std::vector<int> moved(in_d.size(), -1);
      for (int k = 0; k < static_cast<int>(in_d.size()); ++k) moved[k] = fam[into_pos[C.compose(g, in_d[k])]];
      actions[g].push_back(L.index_of(d, I.carrier.act(g, i), moved));
    }
  }
  L.object = Presheaf(C, std::move(sizes), std::move(actions));
  std::vector<int> unit(static_cast<std::size_t>(X.total())), support;
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    for (int x = 0; x < X.size(c); ++x) {
      std::vector<int> fam(in.size());
      for (int k = 0; k < static_cast<int>(in.size()); ++k) fam[k] = X.act(in[k], x);
      unit[X.offset(c) + x] = L.index_of(c, I.top(c), fam);
    }
    for (const auto& e : L.elements[c]) support.push_back(e.first);
  }
  L.unit = NatTrans(X, L.object, std::move(unit));
  L.support = NatTrans(L.object, I.carrier, std::move(support));
  return L;
}

/// L on maps: (i, m) ↦ (i, τ ∘ m).
inline NatTrans lift_map(const NatTrans& t, const Lifted& LX, const Lifted& LY) {
  const auto& C = t.base();
  std::vector<int> flat;
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    for (const auto& [i, fam] : LX.elements[c]) {
      std::vector<int> out(fam.size(), -1);
      for (std::size_t k = 0; k < fam.size(); ++k)
        if (fam[k] >= 0) out[k] = t(C.source(in[k]), fam[k]);
      flat.push_back(LY.index_of(c, i, out));
    }
  }
  return NatTrans(LX.object, LY.object, std::move(flat));
}

/// Number of partial maps Y ⇀ X with supports in I: pairs of a support
/// s: Y → I and a map {y | IsT(s(y))} → X.
inline std::size_t count_partial_maps(const Interval& I, const Presheaf& Y, const Presheaf& X) {
  std::size_t n = 0;
  for (const auto& s : *all_nats(Y, I.carrier)) {
    auto dom = make_subobject(Y, [&](int c, int y) { return s[Y.offset(c) + y] == I.top(c); });
    n += count_nats(dom.domain, X);
  }
  return n;
}

/// The join P ∗ X: pushout of P ← P × X → X, for a subterminal P.
struct Join {
  Presheaf object;
  NatTrans from_point;  // P → P ∗ X
  NatTrans from_value;  // X → P ∗ X
};

inline Join join_types(const Presheaf& P, const Presheaf& X) {
  for (int c = 0; c < P.base().object_count(); ++c)
    if (P.size(c) > 1) throw PreconditionError("join_types: first argument is not subterminal");
  auto PX = product(P, X);
  auto po = pushout(PX.first, PX.second);
  return Join{po.object, po.left, po.right};
}

/// X⊥ with both descriptions: the pushout 1 ← X → I × X along 0 × X, and
/// the total space of i ↦ IsF(i) ∗ X over ∫I.
struct SierpinskiCone {
  Presheaf object;
  NatTrans bottom;     // 1 → X⊥
  NatTrans inclusion;  // X → X⊥, through 1 × X
  NatTrans cylinder;   // I × X → X⊥
  NatTrans support;    // X⊥ → I
  Product cylinder_product;
  Pushout cone;
  /// The fibrewise description and its identification with `object` over I.
  TotalSpace fibrewise;
  NatTrans to_fibrewise;
};

namespace detail {

/// The subterminal i ↦ {i = p} over ∫I for a global point p.
inline Presheaf generic_point_truth(const NatTrans& point, const Elements& el) {
  const auto& B = el.base;
  std::vector<int> sizes(static_cast<std::size_t>(B.total()));
  for (int c = 0; c < B.base().object_count(); ++c)
    for (int i = 0; i < B.size(c); ++i) sizes[el.object(c, i)] = (i == point(c, 0)) ? 1 : 0;
  std::vector<std::vector<int>> actions(static_cast<std::size_t>(el.category.morphism_count()));
  for (int m = 0; m < el.category.morphism_count(); ++m)
    if (sizes[el.category.target(m)] == 1) actions[m] = {0};
  return Presheaf(el.category, std::move(sizes), std::move(actions));
}

}  // namespace detail

inline SierpinskiCone scone(const Interval& I, const Presheaf& X, const Elements& interval_elements) {
  require_same_base(I.carrier, X, "scone");
  const auto& C = I.base();
  auto IX = product(I.carrier, X);
  auto zero_x = pairing(constant_map(X, I.zero), identity_nat(X), IX);
  auto one_x = pairing(constant_map(X, I.one), identity_nat(X), IX);
  auto po = pushout(to_terminal(X), zero_x);
  auto bottom = po.left;
  auto cylinder = po.right;
  auto inclusion = compose(cylinder, one_x);

  // Fibrewise: over (c, i), IsF(i) ∗ X(c).
  const auto& el = interval_elements;
  auto isf = detail::generic_point_truth(I.zero, el);
  auto j = join_types(isf, weaken(X, el));
  auto total = from_elements(j.object, el);

  // Cocone from the pushout legs into the total space.
  const auto& E = total.object;
  std::vector<int> start(static_cast<std::size_t>(I.carrier.total()));
  {
    std::vector<int> run(C.object_count(), 0);
    for (int c = 0; c < C.object_count(); ++c)
      for (int i = 0; i < I.size(c); ++i) {
        start[I.carrier.offset(c) + i] = run[c];
        run[c] += j.object.size(el.object(c, i));
      }
  }
  std::vector<int> bot_flat(C.object_count()), cyl_flat(static_cast<std::size_t>(IX.object.total()));
  for (int c = 0; c < C.object_count(); ++c) {
    const int z = I.bottom(c);
    bot_flat[c] = start[I.carrier.offset(c) + z] + j.from_point(el.object(c, z), 0);
    for (int p = 0; p < IX.object.size(c); ++p) {
      const int i = IX.first_of(c, p), x = IX.second_of(c, p);
      cyl_flat[IX.object.offset(c) + p] = start[I.carrier.offset(c) + i] + j.from_value(el.object(c, i), x);
    }
  }
  NatTrans bot_leg(terminal(C), E, std::move(bot_flat));
  NatTrans cyl_leg(IX.object, E, std::move(cyl_flat));
  auto to_total = induced_map(po.colim, {bot_leg, cyl_leg, compose(cyl_leg, zero_x)});
  if (auto w = iso_failure(to_total))
    throw InternalError("scone: pushout and fibrewise descriptions disagree at " + w->object);
  auto support = compose(total.projection, to_total);
  auto support_direct = induced_map(po.colim, {I.zero, IX.first, compose(IX.first, zero_x)});
  if (!(support == support_direct)) throw InternalError("scone: supports of the two descriptions disagree");
  return SierpinskiCone{po.object, bottom, inclusion, cylinder, support, IX, po, total, to_total};
}

inline SierpinskiCone scone(const Interval& I, const Presheaf& X) {
  return scone(I, X, elements_category(I.carrier));
}

/// σ_X: X⊥ → L(X), given on the pushout legs: ⊥ ↦ (0, abort) and
/// (i, x) ↦ (i, λ_. x).
inline NatTrans comparison(const Interval& I, const SierpinskiCone& S, const Lifted& L) {
  const auto& C = I.base();
  const auto& X = L.value;
  std::vector<int> bot(C.object_count());
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    const int z = I.bottom(c);
    std::vector<int> fam(in.size(), -1);
    for (int k = 0; k < static_cast<int>(in.size()); ++k) {
      if (I.carrier.act(in[k], z) != I.top(C.source(in[k]))) continue;
      // 0 is true here: only a subterminal X has a canonical element.
      const int d = C.source(in[k]);
      if (X.size(d) != 1)
        throw PreconditionError("comparison requires a consistent interval or a subterminal argument");
      fam[k] = 0;
    }
    bot[c] = L.index_of(c, z, fam);
  }
  const auto& IX = S.cylinder_product;
  std::vector<int> cyl(static_cast<std::size_t>(IX.object.total()));
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    for (int p = 0; p < IX.object.size(c); ++p) {
      const int i = IX.first_of(c, p), x = IX.second_of(c, p);
      std::vector<int> fam(in.size(), -1);
      for (int k = 0; k < static_cast<int>(in.size()); ++k)
        if (I.carrier.act(in[k], i) == I.top(C.source(in[k]))) fam[k] = X.act(in[k], x);
      cyl[IX.object.offset(c) + p] = L.index_of(c, i, fam);
    }
  }
  NatTrans bot_leg(terminal(C), L.object, std::move(bot));
  NatTrans cyl_leg(IX.object, L.object, std::move(cyl));
  auto zero_x = pairing(constant_map(X, I.zero), identity_nat(X), IX);
  try {
    return induced_map(S.cone.colim, {bot_leg, cyl_leg, compose(cyl_leg, zero_x)});
  } catch (const PreconditionError&) {
    throw PreconditionError("comparison: bottom and cylinder legs disagree; interval is not consistent");
  }
}

/// Both sides of the Sierpiński-data square: C^{X⊥} against the pullback
/// of C^1 → C^X ← C^{I×X}, compared stage by stage through the gap map.
inline CheckReport sierp_data_square(const Interval& I, const Presheaf& target, const SierpinskiCone& S) {
  const std::string name = "sierp_data_square";
  const auto& C = I.base();
  const auto& X = S.inclusion.source();
  const auto& IX = S.cylinder_product;
  auto pt = terminal(C);
  auto C_cone = exponential_stages(target, S.object);
  auto C_one = exponential_stages(target, pt);
  auto C_x = exponential_stages(target, X);
  auto C_ix = exponential_stages(target, IX.object);
  auto zero_x = pairing(constant_map(X, I.zero), identity_nat(X), IX);
  std::optional<Witness> bad;
  std::string lhs, rhs;
  for (int c = 0; c < C.object_count(); ++c) {
    auto bang = restriction_component(C_one, C_x, to_terminal(X), c);
    auto restrict0 = restriction_component(C_ix, C_x, zero_x, c);
    auto to_bot = restriction_component(C_cone, C_one, S.bottom, c);
    auto to_cyl = restriction_component(C_cone, C_ix, S.cylinder, c);
    // Matching pairs (a, b) with bang(a) = restrict0(b).
    std::vector<long long> over(static_cast<std::size_t>(C_x.size(c)), 0);
    for (int b = 0; b < C_ix.size(c); ++b) ++over[restrict0[b]];
    long long pairs = 0;
    for (int a = 0; a < C_one.size(c); ++a) pairs += over[bang[a]];
    std::map<std::pair<int, int>, int> seen;
    for (int k = 0; k < C_cone.size(c) && !bad; ++k) {
      if (bang[to_bot[k]] != restrict0[to_cyl[k]])
        bad = Witness{"square-not-commuting", c, C.object_name(c), {k}, "gap map leaves the pullback"};
      else if (auto [it, fresh] = seen.emplace(std::make_pair(to_bot[k], to_cyl[k]), k); !fresh)
        bad = Witness{"not-injective", c, C.object_name(c), {it->second, k}, "two maps out of the cone agree on both legs"};
    }
    if (!bad && static_cast<long long>(seen.size()) != pairs)
      bad = Witness{"not-surjective", c, C.object_name(c), {static_cast<int>(seen.size()), static_cast<int>(pairs)},
                    "matching pairs without a map out of the cone"};
    lhs += (c ? "," : "") + std::to_string(C_cone.size(c));
    rhs += (c ? "," : "") + std::to_string(pairs);
  }
  auto r = bad ? CheckReport::failed(name, *bad) : CheckReport::passed(name);
  r.fact("exponential_levels", lhs).fact("pullback_levels", rhs);
  return r;
}

}  // namespace phoa

#endif  // PHOA_CONSTRUCTIONS_HPP
