// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_SHAPES_HPP
#define PHOA_SHAPES_HPP

#include <string>
#include <vector>

#include "phoa/core.hpp"
#include "phoa/interval.hpp"
#include "phoa/topos.hpp"

namespace phoa {

inline constexpr int kMaxSimplexDimension = 4;

/// Δⁿ ⊆ Iⁿ, the descending tuples i₁ ⊒ … ⊒ iₙ.
struct Simplex {
  int n = 0;
  Power cube;
  Subobject sub;

  const Presheaf& object() const { return sub.domain; }
  /// Coordinates of an element of Δⁿ(c).
  std::vector<int> tuple(int c, int x) const { return cube.decode(c, sub.inclusion(c, x)); }
  /// Element of Δⁿ(c) with the given coordinates, or -1.
  int find(int c, const std::vector<int>& t) const { return sub.domain_index(c, cube.encode(c, t)); }
};

inline Simplex simplex(const Interval& I, int n) {
  if (n < 0 || n > kMaxSimplexDimension)
    throw BudgetExceeded("simplex dimension " + std::to_string(n) + " outside 0.." +
                         std::to_string(kMaxSimplexDimension));
  auto cube = power(I.carrier, n);
  auto sub = make_subobject(cube.object, [&](int c, int idx) {
    auto t = cube.decode(c, idx);
    for (int k = 0; k + 1 < n; ++k)
      if (!I.leq(c, t[k + 1], t[k])) return false;
    return true;
  });
  return Simplex{n, cube, sub};
}

/// The vertex 1^k 0^(n-k) of Δⁿ as a global element.
inline NatTrans simplex_vertex(const Interval& I, const Simplex& S, int k) {
  std::vector<int> flat;
  for (int c = 0; c < I.base().object_count(); ++c) {
    std::vector<int> t(static_cast<std::size_t>(S.n), I.bottom(c));
    for (int q = 0; q < k; ++q) t[q] = I.top(c);
    flat.push_back(S.find(c, t));
  }
  return global_element(S.object(), std::move(flat));
}

namespace detail {

/// A map I → Δ² given coordinatewise.
template <class Coords>
NatTrans edge_into_triangle(const Interval& I, const Simplex& tri, Coords coords) {
  std::vector<int> flat(static_cast<std::size_t>(I.carrier.total()));
  for (int c = 0; c < I.base().object_count(); ++c)
    for (int i = 0; i < I.size(c); ++i) {
      const int x = tri.find(c, coords(c, i));
      if (x < 0) throw InternalError("edge leaves the triangle");
      flat[I.carrier.offset(c) + i] = x;
    }
  return NatTrans(I.carrier, tri.object(), std::move(flat));
}

}  // namespace detail

/// i ↦ (i ⊒ 0).
inline NatTrans lower_edge(const Interval& I, const Simplex& tri) {
  return detail::edge_into_triangle(I, tri, [&](int c, int i) { return std::vector<int>{i, I.bottom(c)}; });
}
/// i ↦ (1 ⊒ i).
inline NatTrans upper_edge(const Interval& I, const Simplex& tri) {
  return detail::edge_into_triangle(I, tri, [&](int c, int i) { return std::vector<int>{I.top(c), i}; });
}
/// i ↦ (i ⊒ i).
inline NatTrans diagonal_edge(const Interval& I, const Simplex& tri) {
  return detail::edge_into_triangle(I, tri, [&](int, int i) { return std::vector<int>{i, i}; });
}

/// The inner horn, built as a pushout of two intervals and as the
/// subobject {(i ⊒ j) | j = 0 or i = 1} of Δ², identified over Δ².
struct Horn {
  Subobject formula;        // of Δ²
  Pushout glued;            // I ← 1 → I along 1 and 0
  NatTrans glued_to_triangle;
  NatTrans glued_to_formula;  // an isomorphism

  const Presheaf& object() const { return formula.domain; }
  const NatTrans& inclusion() const { return formula.inclusion; }
};

inline Horn horn(const Interval& I, const Simplex& tri) {
  if (tri.n != 2) throw PreconditionError("horn needs the 2-simplex");
  auto formula = make_subobject(tri.object(), [&](int c, int x) {
    auto t = tri.tuple(c, x);
    return t[1] == I.bottom(c) || t[0] == I.top(c);
  });
  auto glued = pushout(I.one, I.zero);
  auto to_tri = induced_map(glued.colim, {lower_edge(I, tri), upper_edge(I, tri),
                                          compose(lower_edge(I, tri), I.one)});
  if (!is_mono(to_tri)) throw InternalError("horn: glued intervals do not embed in the triangle");
  auto to_formula = corestrict(to_tri, formula);
  if (auto w = iso_failure(to_formula))
    throw InternalError("horn: pushout and formula descriptions disagree at " + w->object);
  return Horn{formula, glued, to_tri, to_formula};
}

/// Colimit of Δ⁰ ← Δ¹ → Δ² ← Δ¹ → Δ² ← Δ¹ → Δ⁰. Node order: x, id_x, ρ, f,
/// σ, id_y, y.
struct WalkingEquivalence {
  Colimit colim;

  const Presheaf& object() const { return colim.object; }
  const NatTrans& x() const { return colim.legs[0]; }
  const NatTrans& rho() const { return colim.legs[2]; }
  const NatTrans& f() const { return colim.legs[3]; }
  const NatTrans& sigma() const { return colim.legs[4]; }
  const NatTrans& y() const { return colim.legs[6]; }
};

inline WalkingEquivalence walking_equivalence(const Interval& I, const Simplex& tri) {
  const auto& C = I.base();
  auto pt = terminal(C);
  const auto& edge = I.carrier;
  auto collapse = to_terminal(edge);
  std::vector<Presheaf> nodes{pt, edge, tri.object(), edge, tri.object(), edge, pt};
  std::vector<DiagramEdge> edges{
      {1, 0, collapse},
      {1, 2, diagonal_edge(I, tri)},  // (−⊒−) into ρ
      {3, 2, lower_edge(I, tri)},     // (−⊒0) into ρ
      {3, 4, upper_edge(I, tri)},     // (1⊒−) into σ
      {5, 4, diagonal_edge(I, tri)},  // (−⊒−) into σ
      {5, 6, collapse},
  };
  return WalkingEquivalence{colimit(C, nodes, edges)};
}

/// Δ² and Λ over I by the upper endpoint i ⊔ j.
struct Display {
  NatTrans triangle;  // Δ² → I
  NatTrans horn;      // Λ → I
};

inline Display display(const Interval& I, const Simplex& tri, const Horn& h) {
  if (!I.has_join()) throw PreconditionError("display requires lattice");
  std::vector<int> flat(static_cast<std::size_t>(tri.object().total()));
  for (int c = 0; c < I.base().object_count(); ++c)
    for (int x = 0; x < tri.object().size(c); ++x) {
      auto t = tri.tuple(c, x);
      flat[tri.object().offset(c) + x] = I.join_at(c, t[0], t[1]);
    }
  NatTrans tri_map(tri.object(), I.carrier, std::move(flat));
  return Display{tri_map, compose(tri_map, h.inclusion())};
}

/// Fibre of a map E → I over a global point.
inline Presheaf fibre_over(const NatTrans& map, const NatTrans& point) { return pullback(map, point).object; }

/// The slice problem over ∫I: Λ → Δ² displayed over the generic point.
struct GenericHorn {
  Elements elements;
  Presheaf triangle;  // (c, j) ↦ I/j
  Presheaf horn;      // (c, j) ↦ IsT(j)⊥
  NatTrans inclusion;
};

inline GenericHorn generic_horn(const Interval& I, const Simplex& tri, const Horn& h, const Elements& el) {
  auto d = display(I, tri, h);
  auto T = to_elements(d.triangle, el);
  auto L = to_elements(d.horn, el);
  return GenericHorn{el, T, L, to_elements_map(h.inclusion(), d.horn, d.triangle)};
}

}  // namespace phoa

#endif  // PHOA_SHAPES_HPP
