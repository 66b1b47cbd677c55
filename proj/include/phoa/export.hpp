// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_EXPORT_HPP
#define PHOA_EXPORT_HPP

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phoa/presheaf.hpp"

namespace phoa {

/// Human label of an element; the default is its index.
using ElementLabel = std::function<std::string(int c, int x)>;

namespace detail {

/// Whether the identities and `gens` compose to every morphism.
inline bool generates(const FiniteCategory& C, const std::vector<int>& gens) {
  const int n = C.morphism_count();
  std::vector<char> reached(static_cast<std::size_t>(n), 0);
  std::vector<int> todo;
  for (int f = 0; f < n; ++f)
    if (C.is_identity(f)) reached[f] = 1, todo.push_back(f);
  while (!todo.empty()) {
    const int h = todo.back();
    todo.pop_back();
    for (int g : gens)
      if (C.target(h) == C.source(g) && !reached[C.compose(g, h)]) {
        reached[C.compose(g, h)] = 1;
        todo.push_back(C.compose(g, h));
      }
  }
  return std::all_of(reached.begin(), reached.end(), [](char r) { return r != 0; });
}

}  // namespace detail

/// A minimal generating set of non-identity morphisms. Starting from all of
/// them, morphisms are dropped while the rest still generate: endomorphisms
/// first, then those with the most factorizations into non-identities.
inline std::vector<int> generating_morphisms(const FiniteCategory& C) {
  const int n = C.morphism_count();
  std::vector<int> factorizations(static_cast<std::size_t>(n), 0);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (!C.is_identity(g) && !C.is_identity(h) && C.target(h) == C.source(g)) ++factorizations[C.compose(g, h)];
  std::vector<int> order;
  for (int f = 0; f < n; ++f)
    if (!C.is_identity(f)) order.push_back(f);
  auto endo = [&](int f) { return C.source(f) == C.target(f); };
  std::stable_sort(order.begin(), order.end(), [&](int f, int g) {
    if (endo(f) != endo(g)) return endo(f);
    return factorizations[f] > factorizations[g];
  });
  std::vector<int> keep = order;
  for (int f : order) {
    std::vector<int> without;
    for (int g : keep)
      if (g != f) without.push_back(g);
    if (detail::generates(C, without)) keep = std::move(without);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

/// Element table: stages with labelled elements, and the action of every
/// morphism.
inline nlohmann::ordered_json presheaf_table(const std::string& name, const Presheaf& F,
                                             const ElementLabel& label = {}) {
  const auto& C = F.base();
  nlohmann::ordered_json j;
  j["name"] = name;
  auto stages = nlohmann::ordered_json::array();
  for (int c = 0; c < C.object_count(); ++c) {
    nlohmann::ordered_json s;
    s["object"] = C.object_name(c);
    s["size"] = F.size(c);
    if (label) {
      auto ls = nlohmann::ordered_json::array();
      for (int x = 0; x < F.size(c); ++x) ls.push_back(label(c, x));
      s["elements"] = ls;
    }
    stages.push_back(s);
  }
  j["stages"] = stages;
  auto actions = nlohmann::ordered_json::array();
  for (int f = 0; f < C.morphism_count(); ++f) {
    nlohmann::ordered_json a;
    a["morphism"] = C.morphism(f).name;
    a["source"] = C.object_name(C.source(f));
    a["target"] = C.object_name(C.target(f));
    a["table"] = F.action(f);
    actions.push_back(a);
  }
  j["actions"] = actions;
  return j;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace detail

/// Graphviz digraph: one node per element, one edge y → F(f)(y) per
/// generating morphism f.
inline std::string presheaf_dot(const std::string& name, const Presheaf& F, const ElementLabel& label = {}) {
  const auto& C = F.base();
  std::ostringstream out;
  out << "digraph \"" << detail::dot_escape(name) << "\" {\n  rankdir=BT;\n";
  for (int c = 0; c < C.object_count(); ++c) {
    out << "  subgraph \"cluster_" << c << "\" {\n    label=\"" << detail::dot_escape(C.object_name(c)) << "\";\n";
    for (int x = 0; x < F.size(c); ++x)
      out << "    e" << F.offset(c) + x << " [label=\"" << detail::dot_escape(label ? label(c, x) : std::to_string(x))
          << "\"];\n";
    out << "  }\n";
  }
  for (int f : generating_morphisms(C)) {
    const int d = C.target(f), c = C.source(f);
    for (int y = 0; y < F.size(d); ++y)
      out << "  e" << F.offset(d) + y << " -> e" << F.offset(c) + F.act(f, y) << " [label=\""
          << detail::dot_escape(C.morphism(f).name) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace phoa

#endif  // PHOA_EXPORT_HPP
