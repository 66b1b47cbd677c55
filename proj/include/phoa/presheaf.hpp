// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_PRESHEAF_HPP
#define PHOA_PRESHEAF_HPP

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "phoa/core.hpp"
#include "phoa/fincat.hpp"

namespace phoa {

/// A finite presheaf F: C^op → FinSet.
///
/// Elements of F(c) are 0..size(c)-1. For a morphism f: c → d the action
/// F(f): F(d) → F(c) is stored as a table of length size(d). Elements are
/// also addressed globally as offset(c) + x, which is how natural
/// transformations are laid out.
class Presheaf {
public:
  Presheaf() : Presheaf(FiniteCategory(), {1}, {{0}}) {}

  Presheaf(FiniteCategory base, std::vector<int> sizes, std::vector<std::vector<int>> actions) {
    auto d = std::make_shared<Data>();
    d->base = std::move(base);
    d->sizes = std::move(sizes);
    d->actions = std::move(actions);
    const auto& C = d->base;
    if (static_cast<int>(d->sizes.size()) != C.object_count())
      throw StructuralError("presheaf has " + std::to_string(d->sizes.size()) + " sets for " +
                            std::to_string(C.object_count()) + " objects");
    if (static_cast<int>(d->actions.size()) != C.morphism_count())
      throw StructuralError("presheaf has " + std::to_string(d->actions.size()) + " actions for " +
                            std::to_string(C.morphism_count()) + " morphisms");
    for (int s : d->sizes)
      if (s < 0) throw StructuralError("negative set size");
    for (int f = 0; f < C.morphism_count(); ++f) {
      const auto& a = d->actions[f];
      const int dom = d->sizes[C.target(f)];
      const int cod = d->sizes[C.source(f)];
      if (static_cast<int>(a.size()) != dom)
        throw StructuralError("action of " + C.morphism(f).name + " has length " + std::to_string(a.size()) +
                              ", expected " + std::to_string(dom));
      for (int v : a)
        if (v < 0 || v >= cod)
          throw StructuralError("action of " + C.morphism(f).name + " maps outside F(" +
                                C.object_name(C.source(f)) + ")");
    }
    d->offsets.resize(d->sizes.size() + 1, 0);
    for (std::size_t c = 0; c < d->sizes.size(); ++c) d->offsets[c + 1] = d->offsets[c] + d->sizes[c];
    require_element_budget(static_cast<std::size_t>(d->offsets.back()), "presheaf");
    std::size_t h = C.fingerprint();
    for (int s : d->sizes) hash_combine(h, static_cast<std::size_t>(s));
    for (const auto& a : d->actions)
      for (int v : a) hash_combine(h, static_cast<std::size_t>(v));
    d->hash = h;
    d_ = std::move(d);
  }

  const FiniteCategory& base() const { return d_->base; }
  int size(int c) const { return d_->sizes[c]; }
  const std::vector<int>& sizes() const { return d_->sizes; }
  int offset(int c) const { return d_->offsets[c]; }
  int total() const { return d_->offsets.back(); }
  /// F(f)(x) for f: c → d and x ∈ F(d).
  int act(int f, int x) const { return d_->actions[f][x]; }
  const std::vector<int>& action(int f) const { return d_->actions[f]; }
  const std::vector<std::vector<int>>& actions() const { return d_->actions; }
  std::size_t hash() const { return d_->hash; }
  /// Object owning the global element id e.
  int object_of(int e) const {
    auto it = std::upper_bound(d_->offsets.begin(), d_->offsets.end(), e);
    return static_cast<int>(it - d_->offsets.begin()) - 1;
  }

  bool operator==(const Presheaf& o) const {
    if (d_ == o.d_) return true;
    return d_->hash == o.d_->hash && d_->sizes == o.d_->sizes && d_->actions == o.d_->actions &&
           d_->base == o.d_->base;
  }

private:
  struct Data {
    FiniteCategory base;
    std::vector<int> sizes;
    std::vector<std::vector<int>> actions;
    std::vector<int> offsets;
    std::size_t hash = 0;
  };
  std::shared_ptr<const Data> d_;
};

struct PresheafHash {
  std::size_t operator()(const Presheaf& p) const noexcept { return p.hash(); }
};

/// A natural transformation, stored flat over the source's global element ids.
class NatTrans {
public:
  /// The identity of the one-point presheaf over the terminal category.
  NatTrans() : flat_{0} {}

  NatTrans(Presheaf source, Presheaf target, std::vector<int> flat)
      : source_(std::move(source)), target_(std::move(target)), flat_(std::move(flat)) {
    if (!(source_.base() == target_.base())) throw StructuralError("natural transformation between different bases");
    if (static_cast<int>(flat_.size()) != source_.total())
      throw StructuralError("natural transformation has " + std::to_string(flat_.size()) + " entries, expected " +
                            std::to_string(source_.total()));
    for (int c = 0; c < source_.base().object_count(); ++c)
      for (int x = 0; x < source_.size(c); ++x) {
        int v = flat_[source_.offset(c) + x];
        if (v < 0 || v >= target_.size(c))
          throw StructuralError("component at " + source_.base().object_name(c) + " maps outside the target");
      }
  }

  static NatTrans from_components(Presheaf source, Presheaf target, const std::vector<std::vector<int>>& comps) {
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(source.total()));
    if (static_cast<int>(comps.size()) != source.base().object_count())
      throw StructuralError("wrong number of components");
    for (int c = 0; c < source.base().object_count(); ++c) {
      if (static_cast<int>(comps[c].size()) != source.size(c))
        throw StructuralError("component at " + source.base().object_name(c) + " has wrong length");
      flat.insert(flat.end(), comps[c].begin(), comps[c].end());
    }
    return NatTrans(std::move(source), std::move(target), std::move(flat));
  }

  const Presheaf& source() const { return source_; }
  const Presheaf& target() const { return target_; }
  const FiniteCategory& base() const { return source_.base(); }
  int operator()(int c, int x) const { return flat_[source_.offset(c) + x]; }
  std::span<const int> component(int c) const {
    return std::span<const int>(flat_).subspan(source_.offset(c), source_.size(c));
  }
  const std::vector<int>& flat() const { return flat_; }

  bool operator==(const NatTrans& o) const {
    return flat_ == o.flat_ && source_ == o.source_ && target_ == o.target_;
  }

private:
  Presheaf source_;
  Presheaf target_;
  std::vector<int> flat_;
};

inline CheckReport validate_presheaf(const Presheaf& F) {
  const std::string name = "presheaf.functoriality";
  const auto& C = F.base();
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x)
      if (F.act(C.identity(c), x) != x)
        return CheckReport::failed(name, {"identity-action", c, C.object_name(c), {x}, "F(id) moves element"});
  for (int g = 0; g < C.morphism_count(); ++g)
    for (int f : C.into(C.source(g))) {
      const int gf = C.compose(g, f);
      for (int x = 0; x < F.size(C.target(g)); ++x)
        if (F.act(gf, x) != F.act(f, F.act(g, x)))
          return CheckReport::failed(name, {"composition-action", C.target(g), C.object_name(C.target(g)), {g, f, x},
                                            "F(" + C.morphism(g).name + " o " + C.morphism(f).name +
                                                ") != F(" + C.morphism(f).name + ") o F(" + C.morphism(g).name + ")"});
    }
  return CheckReport::passed(name);
}

inline CheckReport validate_nat(const NatTrans& t) {
  const std::string name = "nat.naturality";
  const auto& C = t.base();
  const auto& F = t.source();
  const auto& G = t.target();
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int c = C.source(f), d = C.target(f);
    for (int x = 0; x < F.size(d); ++x)
      if (t(c, F.act(f, x)) != G.act(f, t(d, x)))
        return CheckReport::failed(name, {"naturality-square", d, C.object_name(d), {f, x},
                                          "square for " + C.morphism(f).name + " fails"});
  }
  return CheckReport::passed(name);
}

inline NatTrans identity_nat(const Presheaf& F) {
  std::vector<int> flat(static_cast<std::size_t>(F.total()));
  for (int c = 0; c < F.base().object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) flat[F.offset(c) + x] = x;
  return NatTrans(F, F, std::move(flat));
}

/// g ∘ f.
inline NatTrans compose(const NatTrans& g, const NatTrans& f) {
  if (!(f.target() == g.source())) throw StructuralError("compose: codomain of first is not domain of second");
  const auto& F = f.source();
  std::vector<int> flat(static_cast<std::size_t>(F.total()));
  for (int c = 0; c < F.base().object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) flat[F.offset(c) + x] = g(c, f(c, x));
  return NatTrans(F, g.target(), std::move(flat));
}

/// The representable y(c): y(c)(d) = hom(d, c), elements in ascending
/// morphism index order, acting by precomposition.
inline Presheaf yoneda(const FiniteCategory& C, int c) {
  const int n = C.object_count();
  std::vector<int> sizes(n);
  for (int d = 0; d < n; ++d) sizes[d] = static_cast<int>(C.hom(d, c).size());
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int g = 0; g < C.morphism_count(); ++g) {
    const int d2 = C.source(g), d = C.target(g);
    auto& a = actions[g];
    for (int h : C.hom(d, c)) a.push_back(C.hom_position(C.compose(h, g)));
    (void)d2;
  }
  return Presheaf(C, std::move(sizes), std::move(actions));
}

// ---------------------------------------------------------------------------
// Enumeration of natural transformations.

struct NatSearchOptions {
  /// Per global element of the source: -1 for free, otherwise the forced value.
  std::vector<int> fixed;
  /// Only componentwise injective transformations.
  bool injective = false;
};

namespace detail {

/// Backtracking over the elements of F, highest-incidence objects first.
/// Choosing a value for x forces the value of every restriction F(f)(x);
/// the forced values are checked for consistency on the spot, so each
/// complete assignment is natural.
class NatSearch {
public:
  NatSearch(const Presheaf& F, const Presheaf& G, const NatSearchOptions& opt) : F_(F), G_(G), opt_(opt) {
    if (!(F.base() == G.base())) throw StructuralError("enumerate_nats: presheaves over different bases");
    const auto& C = F.base();
    const int n = F.total();
    face_start_.assign(static_cast<std::size_t>(n) + 1, 0);
    obj_.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < C.object_count(); ++c)
      for (int x = 0; x < F.size(c); ++x) {
        const int e = F.offset(c) + x;
        obj_[e] = c;
        for (int f : C.into(c)) {
          if (C.is_identity(f)) continue;
          face_mor_.push_back(f);
          face_elem_.push_back(F.offset(C.source(f)) + F.act(f, x));
        }
        face_start_[e + 1] = static_cast<int>(face_mor_.size());
      }
    order_ = generator_order(G);
    assign_.assign(static_cast<std::size_t>(n), -1);
    if (opt.injective) {
      used_.resize(C.object_count());
      for (int c = 0; c < C.object_count(); ++c) used_[c].assign(static_cast<std::size_t>(G.size(c)), 0);
    }
    node_limit_ = limits().max_nat_nodes.load();
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (!opt_.fixed.empty()) {
      if (static_cast<int>(opt_.fixed.size()) != F_.total()) throw StructuralError("fixed assignment has wrong length");
      for (int e = 0; e < F_.total(); ++e) {
        const int v = opt_.fixed[e];
        if (v < 0) continue;
        if (v >= G_.size(obj_[e])) throw StructuralError("fixed value out of range");
        if (assign_[e] == -1) {
          if (!set(e, v)) return;
        } else if (assign_[e] != v) {
          return;
        }
        if (!propagate(e)) return;
      }
    }
    dfs(0, visit);
  }

  std::size_t nodes() const { return nodes_; }

private:
  /// One element per source component of the restriction graph x → F(f)(x),
  /// cheapest codomain first within a component, then everything else.
  /// Assigning the generators forces every other element.
  std::vector<int> generator_order(const Presheaf& G) const {
    const int n = static_cast<int>(obj_.size());
    std::vector<int> comp(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n)),
        idx(static_cast<std::size_t>(n), -1), stack, edge(static_cast<std::size_t>(n));
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    std::vector<int> call;
    int counter = 0, ncomp = 0;
    for (int root = 0; root < n; ++root) {
      if (idx[root] >= 0) continue;
      call.push_back(root);
      idx[root] = low[root] = counter++;
      edge[root] = face_start_[root];
      stack.push_back(root);
      on[root] = 1;
      while (!call.empty()) {
        const int v = call.back();
        if (edge[v] < face_start_[v + 1]) {
          const int w = face_elem_[edge[v]++];
          if (idx[w] < 0) {
            idx[w] = low[w] = counter++;
            edge[w] = face_start_[w];
            stack.push_back(w);
            on[w] = 1;
            call.push_back(w);
          } else if (on[w]) {
            low[v] = std::min(low[v], idx[w]);
          }
          continue;
        }
        call.pop_back();
        if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
        if (low[v] == idx[v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = ncomp;
          } while (w != v);
          ++ncomp;
        }
      }
    }
    std::vector<char> has_parent(static_cast<std::size_t>(ncomp), 0);
    std::vector<int> rep(static_cast<std::size_t>(ncomp), -1);
    for (int e = 0; e < n; ++e) {
      for (int k = face_start_[e]; k < face_start_[e + 1]; ++k)
        if (comp[face_elem_[k]] != comp[e]) has_parent[comp[face_elem_[k]]] = 1;
      int& r = rep[comp[e]];
      if (r < 0 || G.size(obj_[e]) < G.size(obj_[r])) r = e;
    }
    const auto& C = F_.base();
    std::vector<int> gens, rest;
    for (int e = 0; e < n; ++e) (rep[comp[e]] == e && !has_parent[comp[e]] ? gens : rest).push_back(e);
    std::stable_sort(gens.begin(), gens.end(), [&](int a, int b) {
      return C.into(obj_[a]).size() > C.into(obj_[b]).size();
    });
    gens.insert(gens.end(), rest.begin(), rest.end());
    return gens;
  }

  bool set(int e, int v) {
    if (!used_.empty()) {
      auto& u = used_[obj_[e]][v];
      if (u) return false;
      u = 1;
    }
    assign_[e] = v;
    trail_.push_back(e);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int e = trail_.back();
      trail_.pop_back();
      if (!used_.empty()) used_[obj_[e]][assign_[e]] = 0;
      assign_[e] = -1;
    }
  }

  bool propagate(int e) {
    const int y = assign_[e];
    for (int k = face_start_[e]; k < face_start_[e + 1]; ++k) {
      const int z = face_elem_[k];
      const int v = G_.act(face_mor_[k], y);
      if (assign_[z] == -1) {
        if (!set(z, v)) return false;
      } else if (assign_[z] != v) {
        return false;
      }
    }
    return true;
  }

  template <class Visit>
  bool dfs(std::size_t pos, Visit& visit) {
    while (pos < order_.size() && assign_[order_[pos]] != -1) ++pos;
    if (pos == order_.size()) return visit(static_cast<const std::vector<int>&>(assign_));
    const int e = order_[pos];
    const int c = obj_[e];
    for (int y = 0; y < G_.size(c); ++y) {
      const std::size_t mark = trail_.size();
      if (set(e, y) && propagate(e)) {
        if (++nodes_ > node_limit_)
          throw BudgetExceeded("natural-transformation search exceeded --max-nat-enum " + std::to_string(node_limit_) +
                               " nodes");
        if (!dfs(pos + 1, visit)) {
          undo(mark);
          return false;
        }
      }
      undo(mark);
    }
    return true;
  }

  const Presheaf& F_;
  const Presheaf& G_;
  const NatSearchOptions& opt_;
  std::vector<int> face_start_, face_mor_, face_elem_, obj_, order_, assign_;
  std::vector<int> trail_;
  std::vector<std::vector<char>> used_;
  std::size_t nodes_ = 0;
  std::size_t node_limit_ = 0;
};

}  // namespace detail

/// Visits every natural transformation F → G satisfying `opt` as a flat
/// assignment. The visitor returns false to stop early.
template <class Visit>
void search_nats(const Presheaf& F, const Presheaf& G, const NatSearchOptions& opt, Visit&& visit) {
  detail::NatSearch s(F, G, opt);
  s.run(visit);
}

using Assignments = std::vector<std::vector<int>>;

namespace detail {

struct NatMemo {
  struct Key {
    Presheaf F, G;
    bool operator==(const Key& o) const { return F == o.F && G == o.G; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = k.F.hash();
      hash_combine(h, k.G.hash());
      return h;
    }
  };
  std::shared_mutex mutex;
  std::unordered_map<Key, std::shared_ptr<const Assignments>, KeyHash> table;
  std::size_t stored_ints = 0;
  static constexpr std::size_t kCapacityInts = 40'000'000;
};

inline NatMemo& nat_memo() {
  static NatMemo m;
  return m;
}

}  // namespace detail

/// All natural transformations F → G as flat assignments, in the search's
/// deterministic order. Memoized on the structure of (F, G).
inline std::shared_ptr<const Assignments> all_nats(const Presheaf& F, const Presheaf& G) {
  auto& memo = detail::nat_memo();
  detail::NatMemo::Key key{F, G};
  {
    std::shared_lock lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  }
  auto out = std::make_shared<Assignments>();
  const std::size_t cap = limits().max_elements.load();
  search_nats(F, G, {}, [&](const std::vector<int>& a) {
    out->push_back(a);
    if (out->size() > cap)
      throw BudgetExceeded("hom-set enumeration exceeded --max-elements " + std::to_string(cap));
    return true;
  });
  const std::size_t ints = out->size() * static_cast<std::size_t>(F.total() + 4);
  std::unique_lock lock(memo.mutex);
  if (memo.stored_ints + ints > detail::NatMemo::kCapacityInts) {
    memo.table.clear();
    memo.stored_ints = 0;
  }
  auto [it, inserted] = memo.table.emplace(key, out);
  if (inserted) memo.stored_ints += ints;
  return it->second;
}

inline void clear_nat_memo() {
  auto& memo = detail::nat_memo();
  std::unique_lock lock(memo.mutex);
  memo.table.clear();
  memo.stored_ints = 0;
}

/// Complete, duplicate-free list of natural transformations F → G.
inline std::vector<NatTrans> enumerate_nats(const Presheaf& F, const Presheaf& G) {
  auto all = all_nats(F, G);
  std::vector<NatTrans> out;
  out.reserve(all->size());
  for (const auto& a : *all) out.emplace_back(F, G, a);
  return out;
}

inline std::size_t count_nats(const Presheaf& F, const Presheaf& G) { return all_nats(F, G)->size(); }

/// First transformation satisfying `opt`, if any.
inline std::optional<std::vector<int>> find_nat(const Presheaf& F, const Presheaf& G, const NatSearchOptions& opt = {}) {
  std::optional<std::vector<int>> found;
  search_nats(F, G, opt, [&](const std::vector<int>& a) {
    found = a;
    return false;
  });
  return found;
}

inline bool is_mono(const NatTrans& t) {
  const auto& C = t.base();
  for (int c = 0; c < C.object_count(); ++c) {
    std::vector<char> seen(static_cast<std::size_t>(t.target().size(c)), 0);
    for (int v : t.component(c)) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

inline bool is_epi(const NatTrans& t) {
  const auto& C = t.base();
  for (int c = 0; c < C.object_count(); ++c) {
    std::vector<char> seen(static_cast<std::size_t>(t.target().size(c)), 0);
    for (int v : t.component(c)) seen[v] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
  }
  return true;
}

inline bool is_iso(const NatTrans& t) { return is_mono(t) && is_epi(t); }

/// First stage where a componentwise bijection fails, with the offending elements:
/// kind "not-injective" carries two source elements, "not-surjective" one target element.
inline std::optional<Witness> iso_failure(const NatTrans& t) {
  const auto& C = t.base();
  for (int c = 0; c < C.object_count(); ++c) {
    std::vector<int> pre(static_cast<std::size_t>(t.target().size(c)), -1);
    auto comp = t.component(c);
    for (int x = 0; x < static_cast<int>(comp.size()); ++x) {
      if (pre[comp[x]] >= 0)
        return Witness{"not-injective", c, C.object_name(c), {pre[comp[x]], x}, "two elements with the same image"};
      pre[comp[x]] = x;
    }
    for (int y = 0; y < static_cast<int>(pre.size()); ++y)
      if (pre[y] < 0) return Witness{"not-surjective", c, C.object_name(c), {y}, "element outside the image"};
  }
  return std::nullopt;
}

/// Inverse of a componentwise bijection.
inline NatTrans inverse(const NatTrans& t) {
  if (!is_iso(t)) throw PreconditionError("inverse of a non-isomorphism");
  const auto& G = t.target();
  std::vector<int> flat(static_cast<std::size_t>(G.total()));
  for (int c = 0; c < G.base().object_count(); ++c) {
    auto comp = t.component(c);
    for (int x = 0; x < static_cast<int>(comp.size()); ++x) flat[G.offset(c) + comp[x]] = x;
  }
  return NatTrans(G, t.source(), std::move(flat));
}

/// An isomorphism F → G found by search, if one exists.
inline std::optional<NatTrans> find_iso(const Presheaf& F, const Presheaf& G) {
  if (!(F.base() == G.base())) return std::nullopt;
  if (F.sizes() != G.sizes()) return std::nullopt;
  NatSearchOptions opt;
  opt.injective = true;
  auto a = find_nat(F, G, opt);
  if (!a) return std::nullopt;
  return NatTrans(F, G, std::move(*a));
}

inline bool isomorphic(const Presheaf& F, const Presheaf& G) { return find_iso(F, G).has_value(); }

}  // namespace phoa

#endif  // PHOA_PRESHEAF_HPP
