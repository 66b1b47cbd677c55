// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_SESSION_HPP
#define PHOA_SESSION_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "phoa/constructions.hpp"
#include "phoa/core.hpp"
#include "phoa/locality.hpp"
#include "phoa/modelzoo.hpp"
#include "phoa/report.hpp"

namespace phoa {

/// A loaded model with its interval engine and the object sample in use.
struct Session {
  Model model;
  std::unique_ptr<IntervalTopos> topos;
  std::vector<NamedObject> sample;

  const IntervalTopos& T() const { return *topos; }
  const Interval& interval() const { return model.interval; }
};

/// `sample` overrides the model's default sample when non-empty.
inline Session make_session(Model model, const std::vector<std::string>& sample = {}) {
  Session s;
  s.topos = std::make_unique<IntervalTopos>(model.interval);
  for (const auto& n : sample.empty() ? model.sample : sample) s.sample.emplace_back(n, model.presheaf(n));
  s.model = std::move(model);
  return s;
}

/// Objects are presheaf names of the model, L(e) for the partial map
/// classifier, and Bot(e) for the Sierpiński cone.
inline Presheaf resolve_object(const Session& s, const std::string& expr) {
  auto inner = [&](const std::string& head) -> std::optional<std::string> {
    if (expr.size() > head.size() + 2 && expr.rfind(head + "(", 0) == 0 && expr.back() == ')')
      return expr.substr(head.size() + 1, expr.size() - head.size() - 2);
    return std::nullopt;
  };
  if (auto e = inner("L")) return s.T().lift(resolve_object(s, *e))->object;
  if (auto e = inner("Bot")) return s.T().scone(resolve_object(s, *e))->object;
  return s.model.presheaf(expr);
}

// ---------------------------------------------------------------------------
// Structural cross-checks.

inline CheckReport crosscheck_horn(const Session& s) {
  const std::string name = "crosscheck.horn";
  return guarded(name, [&] {
    const auto& h = s.T().horn();
    if (auto w = iso_failure(h.glued_to_formula)) return CheckReport::failed(name, *w);
    return CheckReport::passed(name)
        .fact("pushout_levels", join_ints(h.glued.object.sizes()))
        .fact("formula_levels", join_ints(h.object().sizes()));
  });
}

inline CheckReport crosscheck_scone(const Session& s, const std::string& x) {
  const std::string name = "crosscheck.scone(" + x + ")";
  return guarded(name, [&] {
    auto S = s.T().scone(resolve_object(s, x));
    if (auto w = iso_failure(S->to_fibrewise)) return CheckReport::failed(name, *w);
    return CheckReport::passed(name)
        .fact("pushout_levels", join_ints(S->object.sizes()))
        .fact("fibrewise_levels", join_ints(S->fibrewise.object.sizes()));
  });
}

inline CheckReport crosscheck_sierp_data(const Session& s, const std::string& x, const std::string& c) {
  const std::string name = "crosscheck.sierp_data(" + x + ";" + c + ")";
  return guarded(name, [&] {
    auto r = sierp_data_square(s.interval(), resolve_object(s, c), *s.T().scone(resolve_object(s, x)));
    r.name = name;
    return r;
  });
}

inline CheckReport crosscheck_partial_maps(const Session& s, const std::string& y, const std::string& x) {
  const std::string name = "crosscheck.partial_maps(" + y + ";" + x + ")";
  return guarded(name, [&] {
    const auto Y = resolve_object(s, y);
    const auto X = resolve_object(s, x);
    const std::size_t homs = count_nats(Y, s.T().lift(X)->object);
    const std::size_t pmaps = count_partial_maps(s.interval(), Y, X);
    auto r = homs == pmaps ? CheckReport::passed(name)
                           : CheckReport::failed(name, Witness{"count-mismatch", -1, "",
                                                               {static_cast<int>(homs), static_cast<int>(pmaps)},
                                                               "maps into L(X) and partial maps differ"});
    return r.fact("homs", std::to_string(homs)).fact("partial_maps", std::to_string(pmaps));
  });
}

/// The stagewise and external formulations of locality agree.
inline CheckReport crosscheck_locality(const Session& s, const std::string& x) {
  const std::string name = "crosscheck.locality(" + x + ")";
  return guarded(name, [&] {
    const auto X = resolve_object(s, x);
    for (const auto& [label, u] : {std::pair<std::string, const NatTrans*>{"horn", &s.T().horn().inclusion()},
                                   {"equivalence", &s.T().equivalence_collapse()}}) {
      auto a = is_local(name, X, *u);
      auto b = is_local_external(name, X, *u);
      if (a.is_pass() != b.is_pass())
        return CheckReport::failed(name, Witness{"formulations-disagree", -1, "", {a.is_pass(), b.is_pass()},
                                                 "locality for " + label});
    }
    return CheckReport::passed(name);
  });
}

// ---------------------------------------------------------------------------
// Checks by name.

namespace detail {

/// Splits "head(a,b)" or "head(a;b)" into head and arguments.
inline std::optional<std::pair<std::string, std::vector<std::string>>> split_call(const std::string& name) {
  const auto open = name.find('(');
  if (open == std::string::npos || name.back() != ')') return std::nullopt;
  const std::string head = name.substr(0, open), body = name.substr(open + 1, name.size() - open - 2);
  std::vector<std::string> args;
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == ';' || (ch == ',' && head == "fiore"))) {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  args.push_back(cur);
  return std::make_pair(head, args);
}

}  // namespace detail

/// Re-runs the check a report name refers to. Throws ReferenceError for
/// names that do not denote a check.
inline CheckReport evaluate_check(const Session& s, const std::string& name) {
  const auto& T = s.T();
  if (name.rfind("axiom.", 0) == 0 || name.rfind("interval.", 0) == 0) return T.axioms().report(name);
  if (name == "crosscheck.horn") return crosscheck_horn(s);
  auto call = detail::split_call(name);
  if (!call) throw ReferenceError("no check named '" + name + "'");
  const auto& [head, args] = *call;
  auto arity = [&, &head = head, &args = args](std::size_t n) {
    if (args.size() != n) throw ReferenceError("check " + head + " takes " + std::to_string(n) + " argument(s)");
  };
  if (head.rfind("theorem.", 0) == 0) {
    arity(1);
    for (const auto& th : theorems())
      if (head == "theorem." + th.id + "." + th.title) {
        if (!th.per_object && args[0] != "I") throw ReferenceError("theorem " + th.id + " is about I only");
        return run_theorem(T, th, args[0], resolve_object(s, args[0]), s.sample);
      }
    throw ReferenceError("no theorem named '" + head + "'");
  }
  if (head == "fiore") {
    arity(2);
    if (args[0] != "horn" && args[0] != "equivalence") throw ReferenceError("fiore test map must be horn or equivalence");
    const auto& u = args[0] == "horn" ? T.horn().inclusion() : T.equivalence_collapse();
    return check_fiore_instance(T, args[0], u, args[1], resolve_object(s, args[1]));
  }
  if (head == "extension") {
    arity(2);
    return check_extension_laws(T, args[0], resolve_object(s, args[0]), args[1], resolve_object(s, args[1]));
  }
  if (head == "crosscheck.scone") return arity(1), crosscheck_scone(s, args[0]);
  if (head == "crosscheck.sierp_data") return arity(2), crosscheck_sierp_data(s, args[0], args[1]);
  if (head == "crosscheck.partial_maps") return arity(2), crosscheck_partial_maps(s, args[0], args[1]);
  if (head == "crosscheck.locality") return arity(1), crosscheck_locality(s, args[0]);
  arity(1);
  const auto props = property_names();
  const bool known = std::find(props.begin(), props.end(), head) != props.end() || head == "infinity_category_well_complete";
  if (!known) throw ReferenceError("no check named '" + name + "'");
  return check_property(T, head, args[0], resolve_object(s, args[0]), s.sample);
}

/// Axioms, every tracked implication, and the Fiore instances for both test
/// maps over the sample, sorted by name.
inline std::vector<CheckReport> run_suite(const Session& s, int jobs = 1) {
  const auto& T = s.T();
  std::vector<CheckReport> out = T.axioms().reports;
  auto th = theorem_suite(T, s.sample, jobs);
  out.insert(out.end(), th.begin(), th.end());
  std::vector<std::function<CheckReport()>> work;
  for (const auto& u : {std::string("horn"), std::string("equivalence")})
    for (const auto& [n, X] : s.sample)
      work.push_back([&T, u, &n = n, &X = X] {
        return timed([&] {
          return check_fiore_instance(T, u, u == "horn" ? T.horn().inclusion() : T.equivalence_collapse(), n, X);
        });
      });
  auto fi = run_parallel(work, jobs);
  out.insert(out.end(), fi.begin(), fi.end());
  return sort_reports(std::move(out));
}

/// 0 when nothing fails or runs out of budget, 1 on any failure, 3 when the
/// only problem is an exhausted budget.
inline int exit_code(const std::vector<CheckReport>& reports) {
  bool budget = false;
  for (const auto& r : reports) {
    if (r.is_fail()) return 1;
    budget = budget || skipped_for_budget(r);
  }
  return budget ? 3 : 0;
}

/// Re-runs every failed report in a saved report document (a whole run or
/// a single report) and checks that the same witness comes back.
inline std::vector<CheckReport> replay_witnesses(const Session& s, const nlohmann::json& doc) {
  std::vector<nlohmann::json> items;
  if (doc.is_object() && doc.contains("reports")) {
    for (const auto& r : doc.at("reports")) items.push_back(r);
  } else if (doc.is_array()) {
    for (const auto& r : doc) items.push_back(r);
  } else {
    items.push_back(doc);
  }
  std::vector<CheckReport> out;
  for (const auto& item : items) {
    if (!item.is_object() || !item.contains("name")) throw SchemaError("replay: report without a name");
    if (item.value("status", std::string()) != "fail") continue;
    if (!item.contains("witness")) throw SchemaError("replay: failed report without a witness");
    const auto name = item.at("name").get<std::string>();
    const auto want = witness_from_json(item.at("witness"));
    auto got = evaluate_check(s, name);
    const std::string rn = "replay(" + name + ")";
    if (got.is_fail() && *got.witness == want) {
      out.push_back(CheckReport::passed(rn));
    } else {
      auto w = got.witness.value_or(Witness{"no-witness", -1, "", {}, ""});
      w.detail = std::string("recorded failure not reproduced; now ") + to_string(got.status) +
                 (got.witness ? " with " + got.witness->kind : std::string());
      out.push_back(CheckReport::failed(rn, w));
    }
  }
  return out;
}

}  // namespace phoa

#endif  // PHOA_SESSION_HPP
