// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference computations used as test oracles. Nothing here
// calls the engine's search, limits or colimits.

#ifndef PHOA_TESTS_ORACLES_HPP
#define PHOA_TESTS_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "phoa/fincat.hpp"
#include "phoa/presheaf.hpp"

namespace oracle {

/// A finite poset as an order matrix.
using Poset = std::vector<std::vector<bool>>;

inline Poset chain(int n) {
  Poset p(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p[a][b] = a <= b;
  return p;
}

inline Poset product(const Poset& a, const Poset& b) {
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  Poset p(na * nb, std::vector<bool>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) p[x][y] = a[x / nb][y / nb] && b[x % nb][y % nb];
  return p;
}

/// Number of monotone maps P → Q, by trying every function.
inline std::uint64_t count_monotone(const Poset& P, const Poset& Q) {
  const int n = static_cast<int>(P.size()), m = static_cast<int>(Q.size());
  std::vector<int> f(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (P[x][y] && !Q[f[x]][f[y]]) ok = false;
    count += ok;
    int k = 0;
    while (k < n && ++f[k] == m) f[k++] = 0;
    if (k == n) break;
  }
  return count;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Natural transformations F → G by enumerating every family of functions
/// and testing every naturality square.
inline std::size_t count_nats(const phoa::Presheaf& F, const phoa::Presheaf& G) {
  const auto& C = F.base();
  const int n = F.total();
  std::vector<int> stage(n), cap(n);
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) {
      stage[F.offset(c) + x] = c;
      cap[F.offset(c) + x] = G.size(c);
    }
  for (int e = 0; e < n; ++e)
    if (cap[e] == 0) return 0;
  std::vector<int> a(n, 0);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (int f = 0; f < C.morphism_count() && ok; ++f) {
      const int s = C.source(f), t = C.target(f);
      for (int y = 0; y < F.size(t) && ok; ++y)
        if (a[F.offset(s) + F.act(f, y)] != G.act(f, a[F.offset(t) + y])) ok = false;
    }
    count += ok;
    int k = 0;
    while (k < n && ++a[k] == cap[k]) a[k++] = 0;
    if (k == n) break;
  }
  return count;
}

/// Random reflexive graph as a presheaf over the simplex category truncated
/// at 1: `vertices` vertices, one degenerate edge per vertex, and `edges`
/// further edges with random endpoints.
inline phoa::Presheaf reflexive_graph(const phoa::FiniteCategory& C, int vertices, int edges, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  std::vector<int> src(vertices), tgt(vertices);
  std::iota(src.begin(), src.end(), 0);
  std::iota(tgt.begin(), tgt.end(), 0);
  for (int e = 0; e < edges; ++e) {
    src.push_back(pick(rng));
    tgt.push_back(pick(rng));
  }
  const int ne = vertices + edges;
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const auto m = phoa::simplex_map(C, f);
    const int a = C.source(f), b = C.target(f);
    if (C.is_identity(f)) {
      actions[f].resize(b == 0 ? vertices : ne);
      std::iota(actions[f].begin(), actions[f].end(), 0);
    } else if (a == b) {  // an edge collapsed onto the degenerate edge of one of its vertices
      actions[f] = m[0] == 0 ? src : tgt;
    } else if (a == 0) {  // a vertex of an edge
      actions[f] = m[0] == 0 ? src : tgt;
    } else {  // degenerate edge on a vertex
      actions[f].resize(vertices);
      std::iota(actions[f].begin(), actions[f].end(), 0);
    }
  }
  return phoa::Presheaf(C, {vertices, ne}, actions);
}

/// Random presheaf on the walking arrow 0 → 1: a function F(1) → F(0).
inline phoa::Presheaf arrow_presheaf(const phoa::FiniteCategory& C, int n0, int n1, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, n0 - 1);
  std::vector<std::vector<int>> actions(C.morphism_count());
  for (int f = 0; f < C.morphism_count(); ++f) {
    const int a = C.source(f), b = C.target(f);
    if (a == b) {
      actions[f].resize(a == 0 ? n0 : n1);
      std::iota(actions[f].begin(), actions[f].end(), 0);
    } else {
      for (int y = 0; y < n1; ++y) actions[f].push_back(pick(rng));
    }
  }
  return phoa::Presheaf(C, {n0, n1}, actions);
}

/// Number of classes of the equivalence relation generated by `pairs` on
/// {0..n-1}, by repeated relabelling.
inline int count_classes(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [a, b] : pairs) {
      const int m = std::min(label[a], label[b]);
      if (label[a] != m || label[b] != m) {
        label[a] = label[b] = m;
        changed = true;
      }
    }
  }
  return static_cast<int>(std::set<int>(label.begin(), label.end()).size());
}

}  // namespace oracle

#endif  // PHOA_TESTS_ORACLES_HPP
