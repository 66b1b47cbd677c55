// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_TOPOS_HPP
#define PHOA_TOPOS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "phoa/core.hpp"
#include "phoa/fincat.hpp"
#include "phoa/presheaf.hpp"

namespace phoa {

inline void require_same_base(const Presheaf& a, const Presheaf& b, const char* what) {
  if (!(a.base() == b.base())) throw StructuralError(std::string(what) + ": presheaves over different bases");
}

// ---------------------------------------------------------------------------
// Limits. All pointwise.

inline Presheaf terminal(const FiniteCategory& C) {
  return Presheaf(C, std::vector<int>(C.object_count(), 1),
                  std::vector<std::vector<int>>(C.morphism_count(), std::vector<int>{0}));
}

inline Presheaf initial(const FiniteCategory& C) {
  return Presheaf(C, std::vector<int>(C.object_count(), 0), std::vector<std::vector<int>>(C.morphism_count()));
}

/// The unique map F → 1.
inline NatTrans to_terminal(const Presheaf& F) {
  return NatTrans(F, terminal(F.base()), std::vector<int>(static_cast<std::size_t>(F.total()), 0));
}

/// The unique map 0 → F.
inline NatTrans from_initial(const Presheaf& F) { return NatTrans(initial(F.base()), F, {}); }

/// Global element of F given by one element per stage.
inline NatTrans global_element(const Presheaf& F, std::vector<int> per_stage) {
  return NatTrans(terminal(F.base()), F, std::move(per_stage));
}

/// The constant map F → G through the global element `point` (1 → G).
inline NatTrans constant_map(const Presheaf& F, const NatTrans& point) {
  std::vector<int> flat(static_cast<std::size_t>(F.total()));
  for (int c = 0; c < F.base().object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) flat[F.offset(c) + x] = point(c, 0);
  return NatTrans(F, point.target(), std::move(flat));
}

/// F × G with elements (a, b) at index a·|G(c)| + b.
struct Product {
  Presheaf object;
  NatTrans first;
  NatTrans second;
  Presheaf left, right;

  int pair(int c, int a, int b) const { return a * right.size(c) + b; }
  int first_of(int c, int p) const { return p / right.size(c); }
  int second_of(int c, int p) const { return p % right.size(c); }
};

inline Product product(const Presheaf& F, const Presheaf& G) {
  require_same_base(F, G, "product");
  const auto& C = F.base();
  std::vector<int> sizes(C.object_count());
  std::size_t total = 0;
  for (int c = 0; c < C.object_count(); ++c) {
    sizes[c] = F.size(c) * G.size(c);
    total += static_cast<std::size_t>(sizes[c]);
  }
  require_element_budget(total, "product");
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int c = C.source(f), d = C.target(f);
    auto& a = actions[f];
    a.resize(static_cast<std::size_t>(sizes[d]));
    for (int x = 0; x < F.size(d); ++x)
      for (int y = 0; y < G.size(d); ++y) a[x * G.size(d) + y] = F.act(f, x) * G.size(c) + G.act(f, y);
  }
  Presheaf P(C, std::move(sizes), std::move(actions));
  std::vector<int> p1(static_cast<std::size_t>(P.total())), p2(p1.size());
  for (int c = 0; c < C.object_count(); ++c)
    for (int k = 0; k < P.size(c); ++k) {
      p1[P.offset(c) + k] = k / G.size(c);
      p2[P.offset(c) + k] = k % G.size(c);
    }
  return Product{P, NatTrans(P, F, std::move(p1)), NatTrans(P, G, std::move(p2)), F, G};
}

/// ⟨a, b⟩: E → F × G.
inline NatTrans pairing(const NatTrans& a, const NatTrans& b, const Product& P) {
  if (!(a.source() == b.source())) throw StructuralError("pairing: different domains");
  const auto& E = a.source();
  std::vector<int> flat(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < E.base().object_count(); ++c)
    for (int x = 0; x < E.size(c); ++x) flat[E.offset(c) + x] = P.pair(c, a(c, x), b(c, x));
  return NatTrans(E, P.object, std::move(flat));
}

/// a × b: F × G → F' × G'.
inline NatTrans product_map(const NatTrans& a, const NatTrans& b) {
  auto src = product(a.source(), b.source());
  auto dst = product(a.target(), b.target());
  return pairing(compose(a, src.first), compose(b, src.second), dst);
}

/// F^n as tuples, first coordinate most significant. F^0 = 1.
struct Power {
  Presheaf object;
  Presheaf factor;
  int n = 0;

  std::vector<int> decode(int c, int idx) const {
    std::vector<int> t(static_cast<std::size_t>(n));
    const int b = factor.size(c);
    for (int k = n - 1; k >= 0; --k) {
      t[k] = idx % b;
      idx /= b;
    }
    return t;
  }
  int encode(int c, std::span<const int> t) const {
    int idx = 0;
    for (int v : t) idx = idx * factor.size(c) + v;
    return idx;
  }
};

inline Power power(const Presheaf& F, int n) {
  if (n < 0) throw PreconditionError("negative power");
  const auto& C = F.base();
  std::vector<int> sizes(C.object_count());
  std::size_t total = 0;
  for (int c = 0; c < C.object_count(); ++c) {
    long long s = 1;
    for (int k = 0; k < n; ++k) {
      s *= F.size(c);
      if (s > static_cast<long long>(limits().max_elements.load())) require_element_budget(static_cast<std::size_t>(s), "power");
    }
    sizes[c] = static_cast<int>(s);
    total += static_cast<std::size_t>(s);
  }
  require_element_budget(total, "power");
  Power P{Presheaf(), F, n};
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int c = C.source(f), d = C.target(f);
    auto& a = actions[f];
    a.resize(static_cast<std::size_t>(sizes[d]));
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int idx = 0; idx < sizes[d]; ++idx) {
      int r = idx;
      for (int k = n - 1; k >= 0; --k) {
        t[k] = F.act(f, r % F.size(d));
        r /= F.size(d);
      }
      int out = 0;
      for (int v : t) out = out * F.size(c) + v;
      a[idx] = out;
    }
  }
  P.object = Presheaf(C, std::move(sizes), std::move(actions));
  return P;
}

/// k-th projection F^n → F.
inline NatTrans power_projection(const Power& P, int k) {
  const auto& X = P.object;
  std::vector<int> flat(static_cast<std::size_t>(X.total()));
  for (int c = 0; c < X.base().object_count(); ++c)
    for (int idx = 0; idx < X.size(c); ++idx) flat[X.offset(c) + idx] = P.decode(c, idx)[k];
  return NatTrans(X, P.factor, std::move(flat));
}

/// A monomorphism presented by its image. Domain elements follow the
/// ambient's element order.
struct Subobject {
  Presheaf domain;
  NatTrans inclusion;
  std::vector<int> index_in_domain;  // per ambient global element, -1 when outside

  const Presheaf& ambient() const { return inclusion.target(); }
  bool contains(int c, int x) const { return index_in_domain[ambient().offset(c) + x] >= 0; }
  int domain_index(int c, int x) const { return index_in_domain[ambient().offset(c) + x]; }
};

/// The subpresheaf of F on the elements satisfying `keep`. Throws LawError
/// when the selection is not closed under the actions.
inline Subobject make_subobject(const Presheaf& F, const std::function<bool(int, int)>& keep) {
  const auto& C = F.base();
  std::vector<int> idx(static_cast<std::size_t>(F.total()), -1);
  std::vector<int> sizes(C.object_count(), 0);
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x)
      if (keep(c, x)) idx[F.offset(c) + x] = sizes[c]++;
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int c = C.source(f), d = C.target(f);
    for (int x = 0; x < F.size(d); ++x) {
      if (idx[F.offset(d) + x] < 0) continue;
      const int y = F.act(f, x);
      const int j = idx[F.offset(c) + y];
      if (j < 0)
        throw LawError("selection not closed under " + C.morphism(f).name + " at element " + std::to_string(x));
      actions[f].push_back(j);
    }
  }
  Presheaf D(C, std::move(sizes), std::move(actions));
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(D.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x)
      if (idx[F.offset(c) + x] >= 0) flat.push_back(x);
  return Subobject{D, NatTrans(D, F, std::move(flat)), std::move(idx)};
}

/// Image of τ as a subobject of its target.
inline Subobject image(const NatTrans& t) {
  const auto& G = t.target();
  std::vector<char> hit(static_cast<std::size_t>(G.total()), 0);
  for (int c = 0; c < G.base().object_count(); ++c)
    for (int v : t.component(c)) hit[G.offset(c) + v] = 1;
  return make_subobject(G, [&](int c, int x) { return hit[G.offset(c) + x] != 0; });
}

/// Factors τ: E → F through a subobject of F containing its image.
inline NatTrans corestrict(const NatTrans& t, const Subobject& m) {
  const auto& E = t.source();
  std::vector<int> flat(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < E.base().object_count(); ++c)
    for (int x = 0; x < E.size(c); ++x) {
      const int j = m.domain_index(c, t(c, x));
      if (j < 0) throw PreconditionError("corestrict: map leaves the subobject");
      flat[E.offset(c) + x] = j;
    }
  return NatTrans(E, m.domain, std::move(flat));
}

/// Restriction of τ: F → G to the subobject m of F.
inline NatTrans restrict_to(const NatTrans& t, const Subobject& m) { return compose(t, m.inclusion); }

inline Subobject full_subobject(const Presheaf& F) {
  return make_subobject(F, [](int, int) { return true; });
}

struct Pullback {
  Presheaf object;
  NatTrans first;
  NatTrans second;
};

/// F ×_H G, elements the pairs (a, b) with f(a) = g(b) in lexicographic order.
inline Pullback pullback(const NatTrans& f, const NatTrans& g) {
  if (!(f.target() == g.target())) throw StructuralError("pullback: maps have different codomains");
  auto P = product(f.source(), g.source());
  auto sub = make_subobject(P.object, [&](int c, int k) {
    return f(c, P.first_of(c, k)) == g(c, P.second_of(c, k));
  });
  return Pullback{sub.domain, compose(P.first, sub.inclusion), compose(P.second, sub.inclusion)};
}

inline Subobject equalizer(const NatTrans& f, const NatTrans& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw StructuralError("equalizer: maps are not parallel");
  return make_subobject(f.source(), [&](int c, int x) { return f(c, x) == g(c, x); });
}

/// Pullback of a subobject along τ: E → F.
inline Subobject preimage(const NatTrans& t, const Subobject& m) {
  return make_subobject(t.source(), [&](int c, int x) { return m.contains(c, t(c, x)); });
}

// ---------------------------------------------------------------------------
// Colimits.

struct DiagramEdge {
  int from = 0;
  int to = 0;
  NatTrans map;
};

struct Colimit {
  Presheaf object;
  std::vector<NatTrans> legs;
  /// Per stage and class: the minimal (node, element) it contains.
  std::vector<std::vector<std::pair<int, int>>> representatives;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

}  // namespace detail

/// Colimit of a finite diagram. Classes are ordered by their minimal member
/// in (node, element) order.
inline Colimit colimit(const FiniteCategory& C, const std::vector<Presheaf>& nodes,
                       const std::vector<DiagramEdge>& edges) {
  for (const auto& n : nodes)
    if (!(n.base() == C)) throw StructuralError("colimit: node over a different base");
  for (const auto& e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(nodes.size()) || e.to >= static_cast<int>(nodes.size()))
      throw StructuralError("colimit: edge endpoint out of range");
    if (!(e.map.source() == nodes[e.from]) || !(e.map.target() == nodes[e.to]))
      throw StructuralError("colimit: edge map does not match its endpoints");
  }
  const int n_obj = C.object_count();
  const int K = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> node_off(n_obj, std::vector<int>(static_cast<std::size_t>(K) + 1, 0));
  std::vector<std::vector<int>> cls(n_obj);
  std::vector<std::vector<std::pair<int, int>>> reps(n_obj);
  std::vector<int> sizes(n_obj);
  for (int c = 0; c < n_obj; ++c) {
    for (int k = 0; k < K; ++k) node_off[c][k + 1] = node_off[c][k] + nodes[k].size(c);
    const int total = node_off[c][K];
    detail::UnionFind uf(total);
    for (const auto& e : edges)
      for (int x = 0; x < nodes[e.from].size(c); ++x)
        uf.unite(node_off[c][e.from] + x, node_off[c][e.to] + e.map(c, x));
    std::vector<int> root_class(static_cast<std::size_t>(total), -1);
    cls[c].resize(static_cast<std::size_t>(total));
    int next = 0;
    for (int g = 0, k = 0; g < total; ++g) {
      while (g >= node_off[c][k + 1]) ++k;
      const int r = uf.find(g);
      if (root_class[r] < 0) {
        root_class[r] = next++;
        reps[c].emplace_back(k, g - node_off[c][k]);
      }
      cls[c][g] = root_class[r];
    }
    sizes[c] = next;
  }
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int c = C.source(f), d = C.target(f);
    auto& a = actions[f];
    for (auto [k, x] : reps[d]) a.push_back(cls[c][node_off[c][k] + nodes[k].act(f, x)]);
  }
  Presheaf Q(C, std::move(sizes), std::move(actions));
  std::vector<NatTrans> legs;
  for (int k = 0; k < K; ++k) {
    std::vector<int> flat(static_cast<std::size_t>(nodes[k].total()));
    for (int c = 0; c < n_obj; ++c)
      for (int x = 0; x < nodes[k].size(c); ++x) flat[nodes[k].offset(c) + x] = cls[c][node_off[c][k] + x];
    legs.emplace_back(nodes[k], Q, std::move(flat));
  }
  return Colimit{Q, std::move(legs), std::move(reps)};
}

/// The map out of a colimit induced by a cocone (one map per node). The
/// cocone condition is checked.
inline NatTrans induced_map(const Colimit& colim, const std::vector<NatTrans>& cocone) {
  if (cocone.size() != colim.legs.size()) throw StructuralError("induced_map: cocone size mismatch");
  const auto& Q = colim.object;
  const auto& T = cocone.front().target();
  std::vector<int> flat(static_cast<std::size_t>(Q.total()));
  for (int c = 0; c < Q.base().object_count(); ++c)
    for (int q = 0; q < Q.size(c); ++q) {
      auto [k, x] = colim.representatives[c][q];
      flat[Q.offset(c) + q] = cocone[k](c, x);
    }
  NatTrans out(Q, T, std::move(flat));
  for (std::size_t k = 0; k < cocone.size(); ++k)
    if (!(compose(out, colim.legs[k]) == cocone[k])) throw PreconditionError("induced_map: not a cocone");
  return out;
}

struct Coproduct {
  Presheaf object;
  NatTrans left;
  NatTrans right;
};

inline Coproduct coproduct(const Presheaf& F, const Presheaf& G) {
  require_same_base(F, G, "coproduct");
  auto col = colimit(F.base(), {F, G}, {});
  return Coproduct{col.object, col.legs[0], col.legs[1]};
}

struct Pushout {
  Presheaf object;
  NatTrans left;   // F → P
  NatTrans right;  // G → P
  Colimit colim;   // nodes [F, G, H]
};

/// Pushout of F ← H → G.
inline Pushout pushout(const NatTrans& to_left, const NatTrans& to_right) {
  if (!(to_left.source() == to_right.source())) throw StructuralError("pushout: span legs have different domains");
  const auto& F = to_left.target();
  const auto& G = to_right.target();
  const auto& H = to_left.source();
  auto col = colimit(H.base(), {F, G, H}, {{2, 0, to_left}, {2, 1, to_right}});
  return Pushout{col.object, col.legs[0], col.legs[1], col};
}

struct Coequalizer {
  Presheaf object;
  NatTrans quotient;
  Colimit colim;  // nodes [B, A]
};

inline Coequalizer coequalizer(const NatTrans& f, const NatTrans& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw StructuralError("coequalizer: maps are not parallel");
  auto col = colimit(f.base(), {f.target(), f.source()}, {{1, 0, f}, {1, 0, g}});
  return Coequalizer{col.object, col.legs[0], col};
}

// ---------------------------------------------------------------------------
// Exponentials: (G^F)(c) = Nat(y(c) × F, G).

/// The stage sets of G^F without the restriction actions.
struct ExponentialStages {
  Presheaf base_object;  // G
  Presheaf exponent;     // F
  std::vector<Presheaf> probes;  // y(c) × F
  std::vector<std::shared_ptr<const Assignments>> stages;
  std::vector<std::unordered_map<std::vector<int>, int, VectorHash>> lookup;

  int size(int c) const { return static_cast<int>(stages[c]->size()); }
  const std::vector<int>& element(int c, int k) const { return (*stages[c])[k]; }
  int index_of(int c, const std::vector<int>& flat) const {
    auto it = lookup[c].find(flat);
    if (it == lookup[c].end()) throw InternalError("exponential: element not found");
    return it->second;
  }
  /// Flat index in probes[c] of (h ∈ hom(d,c), x ∈ F(d)).
  int probe_index(int c, int d, int h_pos, int x) const {
    return probes[c].offset(d) + h_pos * exponent.size(d) + x;
  }
};

/// y(c) × F.
inline Presheaf probe(const Presheaf& F, int c) { return product(yoneda(F.base(), c), F).object; }

inline ExponentialStages exponential_stages(const Presheaf& G, const Presheaf& F) {
  require_same_base(F, G, "exponential");
  const auto& C = F.base();
  ExponentialStages E{G, F, {}, {}, {}};
  std::size_t total = 0;
  for (int c = 0; c < C.object_count(); ++c) {
    E.probes.push_back(probe(F, c));
    E.stages.push_back(all_nats(E.probes.back(), G));
    total += E.stages.back()->size();
    require_element_budget(total, "exponential");
    std::unordered_map<std::vector<int>, int, VectorHash> m;
    m.reserve(E.stages.back()->size());
    for (int k = 0; k < static_cast<int>(E.stages.back()->size()); ++k) m.emplace((*E.stages.back())[k], k);
    E.lookup.push_back(std::move(m));
  }
  return E;
}

struct Exponential {
  Presheaf object;
  ExponentialStages stages;
  NatTrans evaluation;  // G^F × F → G
  Product domain_of_evaluation;
};

inline Exponential exponential(const Presheaf& G, const Presheaf& F) {
  auto S = exponential_stages(G, F);
  const auto& C = F.base();
  std::vector<int> sizes(C.object_count());
  for (int c = 0; c < C.object_count(); ++c) sizes[c] = S.size(c);
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int c2 = C.source(f), c = C.target(f);
    auto& a = actions[f];
    a.resize(static_cast<std::size_t>(S.size(c)));
    for (int k = 0; k < S.size(c); ++k) {
      const auto& alpha = S.element(c, k);
      std::vector<int> beta(static_cast<std::size_t>(S.probes[c2].total()));
      for (int d = 0; d < C.object_count(); ++d) {
        auto homs = C.hom(d, c2);
        for (int hp = 0; hp < static_cast<int>(homs.size()); ++hp) {
          const int moved = C.hom_position(C.compose(f, homs[hp]));
          for (int x = 0; x < F.size(d); ++x)
            beta[S.probe_index(c2, d, hp, x)] = alpha[S.probe_index(c, d, moved, x)];
        }
      }
      a[k] = S.index_of(c2, beta);
    }
  }
  Presheaf X(C, std::move(sizes), std::move(actions));
  auto P = product(X, F);
  std::vector<int> ev(static_cast<std::size_t>(P.object.total()));
  for (int c = 0; c < C.object_count(); ++c) {
    const int id_pos = C.hom_position(C.identity(c));
    for (int k = 0; k < X.size(c); ++k)
      for (int x = 0; x < F.size(c); ++x)
        ev[P.object.offset(c) + P.pair(c, k, x)] = S.element(c, k)[S.probe_index(c, c, id_pos, x)];
  }
  NatTrans evaluation(P.object, G, std::move(ev));
  return Exponential{X, std::move(S), std::move(evaluation), std::move(P)};
}

/// Transpose of φ: E × F → G to E → G^F.
inline NatTrans curry(const NatTrans& phi, const Product& EF, const Exponential& exp) {
  const auto& E = EF.left;
  const auto& F = EF.right;
  const auto& C = E.base();
  const auto& S = exp.stages;
  std::vector<int> flat(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int e = 0; e < E.size(c); ++e) {
      std::vector<int> alpha(static_cast<std::size_t>(S.probes[c].total()));
      for (int d = 0; d < C.object_count(); ++d) {
        auto homs = C.hom(d, c);
        for (int hp = 0; hp < static_cast<int>(homs.size()); ++hp) {
          const int e2 = E.act(homs[hp], e);
          for (int x = 0; x < F.size(d); ++x) alpha[S.probe_index(c, d, hp, x)] = phi(d, EF.pair(d, e2, x));
        }
      }
      flat[E.offset(c) + e] = S.index_of(c, alpha);
    }
  return NatTrans(E, exp.object, std::move(flat));
}

/// Inverse transpose of ψ: E → G^F to E × F → G.
inline NatTrans uncurry(const NatTrans& psi, const Exponential& exp) {
  return compose(exp.evaluation, product_map(psi, identity_nat(exp.stages.exponent)));
}

/// G^u: G^T → G^S at stage c, as a function on stage indices.
inline std::vector<int> restriction_component(const ExponentialStages& GT, const ExponentialStages& GS,
                                              const NatTrans& u, int c) {
  const auto& C = u.base();
  const auto& Sp = u.source();
  std::vector<int> out(static_cast<std::size_t>(GT.size(c)));
  std::vector<int> beta(static_cast<std::size_t>(GS.probes[c].total()));
  for (int k = 0; k < GT.size(c); ++k) {
    const auto& alpha = GT.element(c, k);
    for (int d = 0; d < C.object_count(); ++d) {
      const int nh = static_cast<int>(C.hom(d, c).size());
      for (int hp = 0; hp < nh; ++hp)
        for (int x = 0; x < Sp.size(d); ++x) beta[GS.probe_index(c, d, hp, x)] = alpha[GT.probe_index(c, d, hp, u(d, x))];
    }
    out[k] = GS.index_of(c, beta);
  }
  return out;
}

/// G^u: G^T → G^S for u: S → T.
inline NatTrans exp_precompose(const Exponential& GT, const Exponential& GS, const NatTrans& u) {
  const auto& C = u.base();
  std::vector<int> flat;
  for (int c = 0; c < C.object_count(); ++c) {
    auto comp = restriction_component(GT.stages, GS.stages, u, c);
    flat.insert(flat.end(), comp.begin(), comp.end());
  }
  return NatTrans(GT.object, GS.object, std::move(flat));
}

// ---------------------------------------------------------------------------
// Subobject classifier.

struct Omega {
  Presheaf object;
  /// Per stage, the sieves as sorted morphism lists: empty first, maximal last.
  std::vector<std::vector<std::vector<int>>> sieves;
  std::vector<std::map<std::vector<int>, int>> lookup;

  int index_of(int c, const std::vector<int>& sieve) const {
    auto it = lookup[c].find(sieve);
    if (it == lookup[c].end()) throw InternalError("omega: not a sieve");
    return it->second;
  }
  int maximal(int c) const { return static_cast<int>(sieves[c].size()) - 1; }
  int empty(int) const { return 0; }
};

namespace detail {

/// {h | g∘h ∈ S} for g: d → c.
inline std::vector<int> pull_sieve(const FiniteCategory& C, int g, const std::vector<int>& S) {
  std::vector<int> out;
  for (int h : C.into(C.source(g)))
    if (std::binary_search(S.begin(), S.end(), C.compose(g, h))) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Omega omega(const FiniteCategory& C) {
  const int n = C.object_count();
  Omega O;
  O.sieves.resize(n);
  O.lookup.resize(n);
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<int>> principal;
    for (int h : C.into(c)) {
      std::vector<int> p;
      for (int k : C.into(C.source(h))) p.push_back(C.compose(h, k));
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
      principal.push_back(std::move(p));
    }
    std::set<std::vector<int>> seen{{}};
    std::vector<std::vector<int>> queue{{}};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (const auto& p : principal) {
        std::vector<int> u;
        std::set_union(queue[q].begin(), queue[q].end(), p.begin(), p.end(), std::back_inserter(u));
        if (seen.insert(u).second) {
          queue.push_back(std::move(u));
          require_element_budget(queue.size(), "omega");
        }
      }
    }
    std::sort(queue.begin(), queue.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (int k = 0; k < static_cast<int>(queue.size()); ++k) O.lookup[c].emplace(queue[k], k);
    O.sieves[c] = std::move(queue);
  }
  std::vector<int> sizes(n);
  for (int c = 0; c < n; ++c) sizes[c] = static_cast<int>(O.sieves[c].size());
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int g = 0; g < C.morphism_count(); ++g) {
    const int d = C.source(g), c = C.target(g);
    for (const auto& S : O.sieves[c]) actions[g].push_back(O.index_of(d, detail::pull_sieve(C, g, S)));
  }
  O.object = Presheaf(C, std::move(sizes), std::move(actions));
  return O;
}

/// true: 1 → Ω.
inline NatTrans truth(const Omega& O) {
  std::vector<int> flat;
  for (int c = 0; c < O.object.base().object_count(); ++c) flat.push_back(O.maximal(c));
  return global_element(O.object, std::move(flat));
}

/// Characteristic map of a subobject.
inline NatTrans characteristic(const Subobject& m, const Omega& O) {
  if (!is_mono(m.inclusion)) throw PreconditionError("characteristic map of a non-mono");
  const auto& A = m.ambient();
  const auto& C = A.base();
  std::vector<int> flat(static_cast<std::size_t>(A.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < A.size(c); ++x) {
      std::vector<int> S;
      for (int f : C.into(c))
        if (m.contains(C.source(f), A.act(f, x))) S.push_back(f);
      std::sort(S.begin(), S.end());
      flat[A.offset(c) + x] = O.index_of(c, S);
    }
  return NatTrans(A, O.object, std::move(flat));
}

/// Characteristic map of an arbitrary mono.
inline NatTrans characteristic(const NatTrans& mono, const Omega& O) {
  if (!is_mono(mono)) throw PreconditionError("characteristic map of a non-mono");
  return characteristic(image(mono), O);
}

/// The subobject classified by χ: F → Ω.
inline Subobject subobject_of(const NatTrans& chi, const Omega& O) {
  return make_subobject(chi.source(), [&](int c, int x) { return chi(c, x) == O.maximal(c); });
}

// ---------------------------------------------------------------------------
// Category of elements and the slice equivalence.

/// ∫B: objects (c, b) numbered by B's global element ids; a morphism (f, b)
/// for f: d → c and b ∈ B(c) goes (d, B(f)b) → (c, b).
struct Elements {
  FiniteCategory category;
  Presheaf base;
  std::vector<int> morphism_offset;

  int object(int c, int b) const { return base.offset(c) + b; }
  int stage(int o) const { return base.object_of(o); }
  int element(int o) const { return o - base.offset(stage(o)); }
  int morphism(int f, int b) const { return morphism_offset[f] + b; }
  /// Underlying morphism of the base.
  int base_morphism(int m) const {
    auto it = std::upper_bound(morphism_offset.begin(), morphism_offset.end(), m);
    return static_cast<int>(it - morphism_offset.begin()) - 1;
  }
};

inline Elements elements_category(const Presheaf& B) {
  const auto& C = B.base();
  std::vector<std::string> objects;
  for (int c = 0; c < C.object_count(); ++c)
    for (int b = 0; b < B.size(c); ++b) objects.push_back(C.object_name(c) + "#" + std::to_string(b));
  std::vector<int> moff(static_cast<std::size_t>(C.morphism_count()) + 1, 0);
  for (int f = 0; f < C.morphism_count(); ++f) moff[f + 1] = moff[f] + B.size(C.target(f));
  std::vector<Morphism> morphisms;
  morphisms.reserve(static_cast<std::size_t>(moff.back()));
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int b = 0; b < B.size(C.target(f)); ++b)
      morphisms.push_back({C.morphism(f).name + "#" + std::to_string(b), B.offset(C.source(f)) + B.act(f, b),
                           B.offset(C.target(f)) + b});
  std::vector<int> ids(objects.size());
  for (int c = 0; c < C.object_count(); ++c)
    for (int b = 0; b < B.size(c); ++b) ids[B.offset(c) + b] = moff[C.identity(c)] + b;
  std::vector<Composite> comps;
  for (int g = 0; g < C.morphism_count(); ++g)
    for (int y = 0; y < B.size(C.target(g)); ++y) {
      const int x = B.act(g, y);
      for (int f : C.into(C.source(g))) comps.push_back({moff[g] + y, moff[f] + x, moff[C.compose(g, f)] + y});
    }
  FiniteCategory E(std::move(objects), std::move(morphisms), std::move(ids), comps);
  return Elements{std::move(E), B, std::move(moff)};
}

/// p: E → B as a presheaf over ∫B; the fibre over (c, b) lists p⁻¹(b) in E's order.
inline Presheaf to_elements(const NatTrans& p, const Elements& el) {
  if (!(p.target() == el.base)) throw StructuralError("to_elements: map does not land in the base");
  const auto& E = p.source();
  const auto& B = el.base;
  const auto& C = B.base();
  std::vector<int> sizes(static_cast<std::size_t>(B.total()), 0);
  std::vector<int> pos(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int e = 0; e < E.size(c); ++e) pos[E.offset(c) + e] = sizes[B.offset(c) + p(c, e)]++;
  std::vector<std::vector<int>> actions(static_cast<std::size_t>(el.category.morphism_count()));
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int d = C.source(f), c = C.target(f);
    for (int b = 0; b < B.size(c); ++b) {
      auto& a = actions[el.morphism(f, b)];
      for (int e = 0; e < E.size(c); ++e)
        if (p(c, e) == b) a.push_back(pos[E.offset(d) + E.act(f, e)]);
    }
  }
  return Presheaf(el.category, std::move(sizes), std::move(actions));
}

/// A map over B as a map of presheaves over ∫B.
inline NatTrans to_elements_map(const NatTrans& t, const NatTrans& p, const NatTrans& q) {
  if (!(t.source() == p.source()) || !(t.target() == q.source()) || !(p.target() == q.target()))
    throw StructuralError("to_elements_map: maps do not form a triangle");
  for (int c = 0; c < t.base().object_count(); ++c)
    for (int e = 0; e < t.source().size(c); ++e)
      if (q(c, t(c, e)) != p(c, e)) throw PreconditionError("to_elements_map: map is not over the base");
  auto el = elements_category(p.target());
  auto P = to_elements(p, el);
  auto Q = to_elements(q, el);
  const auto& E = t.source();
  const auto& F = t.target();
  const auto& C = E.base();
  std::vector<int> qpos(static_cast<std::size_t>(F.total()));
  {
    std::vector<int> count(static_cast<std::size_t>(p.target().total()), 0);
    for (int c = 0; c < C.object_count(); ++c)
      for (int y = 0; y < F.size(c); ++y) qpos[F.offset(c) + y] = count[p.target().offset(c) + q(c, y)]++;
  }
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int b = 0; b < p.target().size(c); ++b)
      for (int e = 0; e < E.size(c); ++e)
        if (p(c, e) == b) flat.push_back(qpos[F.offset(c) + t(c, e)]);
  return NatTrans(P, Q, std::move(flat));
}

struct TotalSpace {
  Presheaf object;
  NatTrans projection;
};

/// Σ over ∫B: E(c) = ⊔_b P(c, b) ordered by b, then by fibre element.
inline TotalSpace from_elements(const Presheaf& P, const Elements& el) {
  if (!(P.base() == el.category)) throw StructuralError("from_elements: presheaf not over the category of elements");
  const auto& B = el.base;
  const auto& C = B.base();
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<int> start(static_cast<std::size_t>(B.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int b = 0; b < B.size(c); ++b) {
      start[B.offset(c) + b] = sizes[c];
      sizes[c] += P.size(el.object(c, b));
    }
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int d = C.source(f), c = C.target(f);
    for (int b = 0; b < B.size(c); ++b) {
      const int m = el.morphism(f, b);
      const int b2 = B.act(f, b);
      for (int e = 0; e < P.size(el.object(c, b)); ++e) actions[f].push_back(start[B.offset(d) + b2] + P.act(m, e));
    }
  }
  Presheaf E(C, std::move(sizes), std::move(actions));
  std::vector<int> proj;
  proj.reserve(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int b = 0; b < B.size(c); ++b)
      for (int e = 0; e < P.size(el.object(c, b)); ++e) proj.push_back(b);
  return TotalSpace{E, NatTrans(E, B, std::move(proj))};
}

/// X pulled back to the slice over B, as a presheaf over ∫B: (c, b) ↦ X(c).
inline Presheaf weaken(const Presheaf& X, const Elements& el) {
  require_same_base(X, el.base, "weaken");
  const auto& B = el.base;
  const auto& C = B.base();
  std::vector<int> sizes(static_cast<std::size_t>(B.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int b = 0; b < B.size(c); ++b) sizes[el.object(c, b)] = X.size(c);
  std::vector<std::vector<int>> actions(static_cast<std::size_t>(el.category.morphism_count()));
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int b = 0; b < B.size(C.target(f)); ++b) actions[el.morphism(f, b)] = X.action(f);
  return Presheaf(el.category, std::move(sizes), std::move(actions));
}

inline NatTrans weaken_map(const NatTrans& t, const Elements& el) {
  auto S = weaken(t.source(), el);
  auto T = weaken(t.target(), el);
  const auto& B = el.base;
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(S.total()));
  for (int c = 0; c < B.base().object_count(); ++c)
    for (int b = 0; b < B.size(c); ++b) {
      auto comp = t.component(c);
      flat.insert(flat.end(), comp.begin(), comp.end());
    }
  return NatTrans(S, T, std::move(flat));
}

}  // namespace phoa

#endif  // PHOA_TOPOS_HPP
