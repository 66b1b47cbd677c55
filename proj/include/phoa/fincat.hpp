// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_FINCAT_HPP
#define PHOA_FINCAT_HPP

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "phoa/core.hpp"

namespace phoa {

struct Morphism {
  std::string name;
  int source = 0;
  int target = 0;

  bool operator==(const Morphism&) const = default;
};

/// One entry of a composition table: `second ∘ first = result`.
struct Composite {
  int second = 0;
  int first = 0;
  int result = 0;

  bool operator==(const Composite&) const = default;
};

/// A finite category given by a full composition table.
///
/// Objects and morphisms are identified by index; labels are for display only.
/// The handle is cheap to copy and the underlying data is immutable, so a
/// category may be shared freely between threads. Construction checks only
/// structure (indices in range, composites recorded only on composable pairs);
/// the category laws are checked by validate_category().
class FiniteCategory {
public:
  FiniteCategory() : FiniteCategory({"*"}, {{"id", 0, 0}}, {0}, std::vector<Composite>{{0, 0, 0}}) {}

  FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms, std::vector<int> identities,
                 std::span<const Composite> table) {
    auto d = std::make_shared<Data>();
    d->objects = std::move(objects);
    d->morphisms = std::move(morphisms);
    d->identity = std::move(identities);
    const int n = static_cast<int>(d->objects.size());
    const int m = static_cast<int>(d->morphisms.size());
    if (static_cast<int>(d->identity.size()) != n)
      throw StructuralError("identity table has " + std::to_string(d->identity.size()) + " entries for " +
                            std::to_string(n) + " objects");
    for (int f = 0; f < m; ++f) {
      const auto& mor = d->morphisms[f];
      if (mor.source < 0 || mor.source >= n || mor.target < 0 || mor.target >= n)
        throw StructuralError("morphism " + std::to_string(f) + " (" + mor.name + ") has an endpoint out of range");
    }
    for (int c = 0; c < n; ++c) {
      int i = d->identity[c];
      if (i < 0 || i >= m) throw StructuralError("identity of object " + std::to_string(c) + " out of range");
      if (d->morphisms[i].source != c || d->morphisms[i].target != c)
        throw StructuralError("identity of object " + std::to_string(c) + " is not an endomorphism of it");
    }
    if (static_cast<std::size_t>(m) * static_cast<std::size_t>(m) > 64'000'000)
      throw BudgetExceeded("category with " + std::to_string(m) + " morphisms is too large for a full table");
    d->compose.assign(static_cast<std::size_t>(m) * m, -1);
    for (const auto& e : table) {
      if (e.second < 0 || e.second >= m || e.first < 0 || e.first >= m || e.result < 0 || e.result >= m)
        throw StructuralError("composite (" + std::to_string(e.second) + "," + std::to_string(e.first) + ") -> " +
                              std::to_string(e.result) + " has an index out of range");
      if (d->morphisms[e.first].target != d->morphisms[e.second].source)
        throw StructuralError("composite recorded for non-composable pair (" + std::to_string(e.second) + "," +
                              std::to_string(e.first) + "): cod(" + d->morphisms[e.first].name + ") != dom(" +
                              d->morphisms[e.second].name + ")");
      int& slot = d->compose[static_cast<std::size_t>(e.second) * m + e.first];
      if (slot != -1 && slot != e.result)
        throw StructuralError("composite (" + std::to_string(e.second) + "," + std::to_string(e.first) +
                              ") recorded twice with different results");
      slot = e.result;
    }
    d->index();
    d_ = std::move(d);
  }

  int object_count() const { return static_cast<int>(d_->objects.size()); }
  int morphism_count() const { return static_cast<int>(d_->morphisms.size()); }
  const std::string& object_name(int c) const { return d_->objects[c]; }
  const std::vector<std::string>& object_names() const { return d_->objects; }
  const Morphism& morphism(int f) const { return d_->morphisms[f]; }
  const std::vector<Morphism>& morphisms() const { return d_->morphisms; }
  int source(int f) const { return d_->morphisms[f].source; }
  int target(int f) const { return d_->morphisms[f].target; }
  int identity(int c) const { return d_->identity[c]; }
  const std::vector<int>& identities() const { return d_->identity; }
  bool is_identity(int f) const { return d_->identity[source(f)] == f; }

  /// g∘f, or -1 when the table has no entry.
  int compose(int g, int f) const {
    return d_->compose[static_cast<std::size_t>(g) * morphism_count() + f];
  }

  /// Morphisms a → b in ascending index order.
  std::span<const int> hom(int a, int b) const { return d_->homs[static_cast<std::size_t>(a) * object_count() + b]; }
  /// All morphisms with target c, ascending.
  std::span<const int> into(int c) const { return d_->into[c]; }
  /// Position of f inside hom(source f, target f).
  int hom_position(int f) const { return d_->hom_pos[f]; }

  std::size_t fingerprint() const { return d_->fingerprint; }

  /// The recorded table, in (second, first) order.
  std::vector<Composite> composites() const {
    std::vector<Composite> out;
    const int m = morphism_count();
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f)
        if (int r = compose(g, f); r >= 0) out.push_back({g, f, r});
    return out;
  }

  bool operator==(const FiniteCategory& o) const {
    if (d_ == o.d_) return true;
    return d_->fingerprint == o.d_->fingerprint && d_->objects == o.d_->objects &&
           d_->morphisms == o.d_->morphisms && d_->identity == o.d_->identity && d_->compose == o.d_->compose;
  }

private:
  struct Data {
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<int> identity;
    std::vector<int> compose;
    std::vector<std::vector<int>> homs;
    std::vector<std::vector<int>> into;
    std::vector<int> hom_pos;
    std::size_t fingerprint = 0;

    void index() {
      const int n = static_cast<int>(objects.size());
      const int m = static_cast<int>(morphisms.size());
      homs.assign(static_cast<std::size_t>(n) * n, {});
      into.assign(n, {});
      hom_pos.assign(m, 0);
      for (int f = 0; f < m; ++f) {
        auto& h = homs[static_cast<std::size_t>(morphisms[f].source) * n + morphisms[f].target];
        hom_pos[f] = static_cast<int>(h.size());
        h.push_back(f);
        into[morphisms[f].target].push_back(f);
      }
      std::size_t h = 0x51ed27ULL;
      hash_combine(h, static_cast<std::size_t>(n));
      hash_combine(h, static_cast<std::size_t>(m));
      for (const auto& mor : morphisms) {
        hash_combine(h, static_cast<std::size_t>(mor.source));
        hash_combine(h, static_cast<std::size_t>(mor.target));
      }
      for (int i : identity) hash_combine(h, static_cast<std::size_t>(i));
      for (int r : compose) hash_combine(h, static_cast<std::size_t>(r + 1));
      fingerprint = h;
    }
  };
  std::shared_ptr<const Data> d_;
};

/// Checks totality on composable pairs, typing of composites, unit and
/// associativity laws. Structural problems are rejected earlier, at
/// construction, with StructuralError.
inline CheckReport validate_category(const FiniteCategory& C) {
  const std::string name = "category.laws";
  const int m = C.morphism_count();
  auto label = [&](int f) { return C.morphism(f).name; };
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      const bool composable = C.target(f) == C.source(g);
      const int gf = C.compose(g, f);
      if (composable && gf < 0)
        return CheckReport::failed(name, {"missing-composite", -1, "", {g, f}, label(g) + " o " + label(f) + " undefined"});
      if (composable && (C.source(gf) != C.source(f) || C.target(gf) != C.target(g)))
        return CheckReport::failed(name, {"ill-typed-composite", -1, "", {g, f, gf}, label(g) + " o " + label(f) + " = " + label(gf)});
    }
  for (int f = 0; f < m; ++f) {
    if (C.compose(C.identity(C.target(f)), f) != f)
      return CheckReport::failed(name, {"left-unit", -1, "", {f}, "id o " + label(f) + " != " + label(f)});
    if (C.compose(f, C.identity(C.source(f))) != f)
      return CheckReport::failed(name, {"right-unit", -1, "", {f}, label(f) + " o id != " + label(f)});
  }
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g) {
      if (C.target(g) != C.source(h)) continue;
      const int hg = C.compose(h, g);
      for (int f : C.into(C.source(g))) {
        const int lhs = C.compose(h, C.compose(g, f));
        const int rhs = C.compose(hg, f);
        if (lhs != rhs)
          return CheckReport::failed(name, {"associativity", -1, "", {h, g, f},
                                            label(h) + " o (" + label(g) + " o " + label(f) + ") != (" + label(h) +
                                                " o " + label(g) + ") o " + label(f)});
      }
    }
  return CheckReport::passed(name);
}

inline FiniteCategory terminal_category() { return FiniteCategory(); }

namespace detail {

/// All monotone maps {0..a} → {0..b} as value vectors, in lexicographic order.
inline std::vector<std::vector<int>> monotone_maps(int a, int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(a + 1, 0);
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos > a) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= b; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace detail

inline constexpr int kMaxSimplexTruncation = 4;

/// The full subcategory of the simplex category on [0], ..., [n].
/// Morphisms are ordered by (source, target, lexicographic value vector);
/// simplex_map() recovers the underlying monotone map.
inline FiniteCategory truncated_simplex_category(int n) {
  if (n < 0 || n > kMaxSimplexTruncation)
    throw BudgetExceeded("truncated_simplex_category: n = " + std::to_string(n) + " outside [0, " +
                         std::to_string(kMaxSimplexTruncation) + "]");
  std::vector<std::string> objects;
  for (int k = 0; k <= n; ++k) objects.push_back("[" + std::to_string(k) + "]");
  std::vector<Morphism> mors;
  std::vector<std::vector<int>> maps;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (auto& v : detail::monotone_maps(a, b)) {
        std::string nm;
        for (int x : v) nm += std::to_string(x);
        mors.push_back({nm + ":" + std::to_string(a) + "->" + std::to_string(b), a, b});
        maps.push_back(std::move(v));
      }
  const int m = static_cast<int>(mors.size());
  std::vector<int> ids(n + 1, -1);
  for (int f = 0; f < m; ++f) {
    if (mors[f].source != mors[f].target) continue;
    bool id = true;
    for (int x = 0; x <= mors[f].source; ++x) id = id && maps[f][x] == x;
    if (id) ids[mors[f].source] = f;
  }
  auto find = [&](int a, int b, const std::vector<int>& v) {
    for (int f = 0; f < m; ++f)
      if (mors[f].source == a && mors[f].target == b && maps[f] == v) return f;
    return -1;
  };
  std::vector<Composite> table;
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      if (mors[f].target != mors[g].source) continue;
      std::vector<int> v(maps[f].size());
      for (std::size_t x = 0; x < v.size(); ++x) v[x] = maps[g][maps[f][x]];
      table.push_back({g, f, find(mors[f].source, mors[g].target, v)});
    }
  return FiniteCategory(std::move(objects), std::move(mors), std::move(ids), table);
}

/// Underlying monotone map of a morphism of truncated_simplex_category.
inline std::vector<int> simplex_map(const FiniteCategory& C, int f) {
  const auto& mor = C.morphism(f);
  auto maps = detail::monotone_maps(mor.source, mor.target);
  return maps.at(static_cast<std::size_t>(C.hom_position(f)));
}

/// A finite poset {0..n-1} as a thin category. `leq[x][y]` says x ≤ y.
/// Throws LawError naming the failing pair or triple when the relation
/// is not a partial order.
inline FiniteCategory poset_as_category(const std::vector<std::vector<bool>>& leq,
                                        std::vector<std::string> labels = {}) {
  const int n = static_cast<int>(leq.size());
  for (const auto& row : leq)
    if (static_cast<int>(row.size()) != n) throw StructuralError("poset relation is not square");
  for (int x = 0; x < n; ++x)
    if (!leq[x][x]) throw LawError("poset relation not reflexive at " + std::to_string(x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && leq[x][y] && leq[y][x])
        throw LawError("poset relation not antisymmetric at (" + std::to_string(x) + "," + std::to_string(y) + ")");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (leq[x][y] && leq[y][z] && !leq[x][z])
          throw LawError("poset relation not transitive at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                         std::to_string(z) + ")");
  if (labels.empty())
    for (int x = 0; x < n; ++x) labels.push_back(std::to_string(x));
  std::vector<Morphism> mors;
  std::vector<std::vector<int>> id_of(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (leq[x][y]) {
        id_of[x][y] = static_cast<int>(mors.size());
        mors.push_back({labels[x] + "<=" + labels[y], x, y});
      }
  std::vector<int> ids(n);
  for (int x = 0; x < n; ++x) ids[x] = id_of[x][x];
  std::vector<Composite> table;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (leq[x][y] && leq[y][z]) table.push_back({id_of[y][z], id_of[x][y], id_of[x][z]});
  return FiniteCategory(std::move(labels), std::move(mors), std::move(ids), table);
}

/// The walking arrow 0 → 1.
inline FiniteCategory walking_arrow() {
  return poset_as_category({{true, true}, {false, true}}, {"0", "1"});
}

}  // namespace phoa

#endif  // PHOA_FINCAT_HPP
