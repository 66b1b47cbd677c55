// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_MODELZOO_HPP
#define PHOA_MODELZOO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "phoa/core.hpp"
#include "phoa/fincat.hpp"
#include "phoa/interval.hpp"
#include "phoa/presheaf.hpp"
#include "phoa/shapes.hpp"
#include "phoa/topos.hpp"

namespace phoa {

inline constexpr int kModelFormatVersion = 1;

/// A base category, named presheaves over it, an interval on one of them,
/// and the names of the default object sample.
struct Model {
  std::string name;
  FiniteCategory category;
  std::vector<std::string> names;
  std::vector<Presheaf> presheaves;
  std::string carrier;
  Interval interval;
  std::vector<std::string> sample;

  int find(const std::string& n) const {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == n) return static_cast<int>(k);
    return -1;
  }
  const Presheaf& presheaf(const std::string& n) const {
    const int k = find(n);
    if (k < 0) throw ReferenceError("model " + name + " has no presheaf named '" + n + "'");
    return presheaves[k];
  }
  void add(std::string n, Presheaf p) {
    if (find(n) >= 0) throw SchemaError("duplicate presheaf name '" + n + "'");
    names.push_back(std::move(n));
    presheaves.push_back(std::move(p));
  }
};

namespace detail {

/// Interval tables from per-stage binary operations on element indices.
template <class Op>
std::vector<std::vector<int>> operation_table(const Presheaf& I, Op op) {
  std::vector<std::vector<int>> t(static_cast<std::size_t>(I.base().object_count()));
  for (int c = 0; c < I.base().object_count(); ++c)
    for (int a = 0; a < I.size(c); ++a)
      for (int b = 0; b < I.size(c); ++b) t[c].push_back(op(c, a, b));
  return t;
}

inline Presheaf discrete_set(int n) { return Presheaf(terminal_category(), {n}, {[n] {
                                                         std::vector<int> v(static_cast<std::size_t>(n));
                                                         for (int k = 0; k < n; ++k) v[k] = k;
                                                         return v;
                                                       }()}); }

inline void add_shapes(Model& m) {
  auto tri = simplex(m.interval, 2);
  m.add("Delta2", tri.object());
  m.add("Lambda", horn(m.interval, tri).object());
}

}  // namespace detail

/// The chain {0 < 1 < … < k} in Set, with min and max.
inline Model model_set_chain(int k) {
  if (k < 1) throw PreconditionError("chain model needs k >= 1");
  const int n = k + 1;
  Model m;
  m.name = k == 1 ? "set" : "chain" + std::to_string(k);
  m.category = terminal_category();
  auto I = detail::discrete_set(n);
  m.carrier = "I";
  m.add("I", I);
  auto mn = detail::operation_table(I, [](int, int a, int b) { return std::min(a, b); });
  auto mx = detail::operation_table(I, [](int, int a, int b) { return std::max(a, b); });
  m.interval = make_interval(I, {0}, {k}, mn, mx);
  m.add("empty", detail::discrete_set(0));
  m.add("point", detail::discrete_set(1));
  m.add("set3", detail::discrete_set(3));
  m.add("set4", detail::discrete_set(4));
  m.sample = {"empty", "point", "I", "set3", "set4"};
  return m;
}

/// Set with I = 2 = {0 < 1}.
inline Model model_set() { return model_set_chain(1); }

/// Set with the one-point interval, so 0 = 1.
inline Model model_degenerate() {
  Model m;
  m.name = "degenerate";
  m.category = terminal_category();
  auto I = detail::discrete_set(1);
  m.carrier = "I";
  m.add("I", I);
  m.interval = make_interval(I, {0}, {0}, {{0}}, std::vector<std::vector<int>>{{0}});
  m.add("empty", detail::discrete_set(0));
  m.add("set2", detail::discrete_set(2));
  m.sample = {"empty", "I", "set2"};
  return m;
}

/// Presheaves on Δ≤n with I = y[1], 0 and 1 the constant maps, and
/// pointwise min and max.
inline Model model_truncated_sset(int n) {
  if (n != 2 && n != 3) throw PreconditionError("truncated simplicial model needs n in {2, 3}");
  Model m;
  m.name = "sset" + std::to_string(n);
  m.category = truncated_simplex_category(n);
  const auto& C = m.category;
  auto I = yoneda(C, 1);
  m.carrier = "I";
  m.add("I", I);
  // Elements of I([k]) are the monotone maps [k] → [1], in hom order.
  auto value = [&](int c, int e) { return simplex_map(C, C.hom(c, 1)[e]); };
  auto find = [&](int c, const std::vector<int>& v) {
    for (int e = 0; e < I.size(c); ++e)
      if (value(c, e) == v) return e;
    throw InternalError("sset: monotone map not found");
  };
  auto pointwise = [&](auto op) {
    return detail::operation_table(I, [&](int c, int a, int b) {
      auto va = value(c, a), vb = value(c, b);
      for (std::size_t x = 0; x < va.size(); ++x) va[x] = op(va[x], vb[x]);
      return find(c, va);
    });
  };
  std::vector<int> zero, one;
  for (int c = 0; c <= n; ++c) {
    zero.push_back(find(c, std::vector<int>(static_cast<std::size_t>(c) + 1, 0)));
    one.push_back(find(c, std::vector<int>(static_cast<std::size_t>(c) + 1, 1)));
  }
  m.interval = make_interval(I, zero, one, pointwise([](int a, int b) { return std::min(a, b); }),
                             pointwise([](int a, int b) { return std::max(a, b); }));
  m.add("empty", initial(C));
  m.add("point", terminal(C));
  detail::add_shapes(m);
  m.sample = {"empty", "point", "I", "Delta2", "Lambda"};
  for (int c = 0; c <= n; ++c) {
    if (c == 1) continue;  // y[1] is I itself
    const std::string nm = "y[" + std::to_string(c) + "]";
    m.add(nm, yoneda(C, c));
    m.sample.push_back(nm);
  }
  return m;
}

/// Names accepted by builtin_model.
inline std::vector<std::string> builtin_model_names() { return {"set", "degenerate", "sset2", "sset3", "chain<k>"}; }

/// The default zoo. Chain models are generated on demand.
inline std::vector<std::string> zoo_names() { return {"set", "degenerate", "sset2", "sset3"}; }

inline std::optional<Model> builtin_model(const std::string& name) {
  if (name == "set") return model_set();
  if (name == "degenerate") return model_degenerate();
  if (name == "sset2") return model_truncated_sset(2);
  if (name == "sset3") return model_truncated_sset(3);
  if (name.rfind("chain", 0) == 0 && name.size() > 5) {
    int k = 0;
    for (char ch : name.substr(5)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      k = k * 10 + (ch - '0');
      if (k > 64) return std::nullopt;
    }
    return model_set_chain(k);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON.

using json = nlohmann::json;

inline json model_to_json(const Model& m) {
  const auto& C = m.category;
  json cat;
  cat["objects"] = C.object_names();
  json mors = json::array();
  for (const auto& f : C.morphisms()) mors.push_back({{"name", f.name}, {"source", f.source}, {"target", f.target}});
  cat["morphisms"] = mors;
  cat["identities"] = C.identities();
  json comp = json::array();
  for (const auto& e : C.composites()) comp.push_back({e.second, e.first, e.result});
  cat["composition"] = comp;
  json ps = json::array();
  for (std::size_t k = 0; k < m.names.size(); ++k)
    ps.push_back({{"name", m.names[k]}, {"sizes", m.presheaves[k].sizes()}, {"actions", m.presheaves[k].actions()}});
  auto stage_table = [&](const NatTrans& t) {
    json rows = json::array();
    for (int c = 0; c < C.object_count(); ++c) {
      auto comp_c = t.component(c);
      rows.push_back(std::vector<int>(comp_c.begin(), comp_c.end()));
    }
    return rows;
  };
  const auto& I = m.interval;
  std::vector<int> zero, one;
  for (int c = 0; c < C.object_count(); ++c) {
    zero.push_back(I.bottom(c));
    one.push_back(I.top(c));
  }
  json iv{{"carrier", m.carrier}, {"zero", zero}, {"one", one}, {"meet", stage_table(I.meet)}};
  if (I.join) iv["join"] = stage_table(*I.join);
  return json{{"format_version", kModelFormatVersion}, {"name", m.name}, {"category", cat},
              {"presheaves", ps}, {"interval", iv}, {"sample", m.sample}};
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

template <class T>
T as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw SchemaError(where + ": wrong type");
  }
}

inline void require_laws(const CheckReport& r, const std::string& where) {
  if (!r.is_fail()) return;
  const auto& w = *r.witness;
  throw LawError(where + ": " + r.name + " fails (" + w.kind + " [" + join_ints(w.elements) + "]" +
                 (w.object.empty() ? "" : " at " + w.object) + ": " + w.detail + ")");
}

}  // namespace detail

/// Parses and fully validates a model. Throws SchemaError for shape
/// problems, ReferenceError for dangling names or indices, LawError when a
/// category, presheaf or interval map breaks its laws.
inline Model model_from_json(const json& j) {
  using detail::as;
  using detail::field;
  if (!j.is_object()) throw SchemaError("model: expected a JSON object");
  const int version = as<int>(field(j, "format_version", "model"), "model.format_version");
  if (version != kModelFormatVersion)
    throw SchemaError("model.format_version: unsupported version " + std::to_string(version));
  Model m;
  m.name = as<std::string>(field(j, "name", "model"), "model.name");

  const auto& cj = field(j, "category", "model");
  auto objects = as<std::vector<std::string>>(field(cj, "objects", "category"), "category.objects");
  std::vector<Morphism> mors;
  const auto& mj = field(cj, "morphisms", "category");
  if (!mj.is_array()) throw SchemaError("category.morphisms: expected an array");
  for (std::size_t k = 0; k < mj.size(); ++k) {
    const std::string where = "category.morphisms[" + std::to_string(k) + "]";
    mors.push_back({as<std::string>(field(mj[k], "name", where), where + ".name"),
                    as<int>(field(mj[k], "source", where), where + ".source"),
                    as<int>(field(mj[k], "target", where), where + ".target")});
  }
  auto ids = as<std::vector<int>>(field(cj, "identities", "category"), "category.identities");
  auto triples = as<std::vector<std::vector<int>>>(field(cj, "composition", "category"), "category.composition");
  std::vector<Composite> table;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    if (triples[k].size() != 3)
      throw SchemaError("category.composition[" + std::to_string(k) + "]: expected [second, first, result]");
    table.push_back({triples[k][0], triples[k][1], triples[k][2]});
  }
  try {
    m.category = FiniteCategory(std::move(objects), std::move(mors), std::move(ids), table);
  } catch (const StructuralError& e) {
    throw ReferenceError(std::string("category: ") + e.what());
  }
  detail::require_laws(validate_category(m.category), "category");

  const auto& pj = field(j, "presheaves", "model");
  if (!pj.is_array()) throw SchemaError("presheaves: expected an array");
  for (std::size_t k = 0; k < pj.size(); ++k) {
    const std::string where = "presheaves[" + std::to_string(k) + "]";
    auto nm = as<std::string>(field(pj[k], "name", where), where + ".name");
    auto sizes = as<std::vector<int>>(field(pj[k], "sizes", where), where + ".sizes");
    auto actions = as<std::vector<std::vector<int>>>(field(pj[k], "actions", where), where + ".actions");
    Presheaf p;
    try {
      p = Presheaf(m.category, std::move(sizes), std::move(actions));
    } catch (const StructuralError& e) {
      throw ReferenceError(where + " (" + nm + "): " + e.what());
    }
    detail::require_laws(validate_presheaf(p), where + " (" + nm + ")");
    m.add(nm, std::move(p));
  }

  const auto& ij = field(j, "interval", "model");
  m.carrier = as<std::string>(field(ij, "carrier", "interval"), "interval.carrier");
  const auto& I = m.presheaf(m.carrier);
  auto zero = as<std::vector<int>>(field(ij, "zero", "interval"), "interval.zero");
  auto one = as<std::vector<int>>(field(ij, "one", "interval"), "interval.one");
  auto meet = as<std::vector<std::vector<int>>>(field(ij, "meet", "interval"), "interval.meet");
  std::optional<std::vector<std::vector<int>>> join;
  if (ij.contains("join")) join = as<std::vector<std::vector<int>>>(ij["join"], "interval.join");
  try {
    m.interval = make_interval(I, zero, one, meet, join);
  } catch (const StructuralError& e) {
    throw ReferenceError(std::string("interval: ") + e.what());
  }
  detail::require_laws(validate_interval(m.interval), "interval");

  if (j.contains("sample")) m.sample = as<std::vector<std::string>>(j["sample"], "model.sample");
  for (const auto& s : m.sample)
    if (m.find(s) < 0) throw ReferenceError("sample: unknown presheaf '" + s + "'");
  return m;
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return model_from_json(j);
}

inline void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write model file " + path);
  out << model_to_json(m).dump(2) << "\n";
}

/// A builtin name or a path to a model file.
inline Model resolve_model(const std::string& name_or_path) {
  if (auto m = builtin_model(name_or_path)) return *m;
  return load_model(name_or_path);
}

}  // namespace phoa

#endif  // PHOA_MODELZOO_HPP
