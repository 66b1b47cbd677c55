// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 all checks pass or skip, 1 a check
// failed, 2 bad input, 3 a budget was exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phoa/phoa.hpp"

namespace {

using namespace phoa;

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string model;
  std::string sample;
  bool json = false;
  bool timing = false;
  int jobs = 1;
  std::size_t max_elements = 100000;
  std::size_t max_nat_enum = 1000000;

  std::string object;
  std::string property;
  std::string check_name;
  std::string witness_file;
  std::string construction;
  std::string shape;
  std::string format = "json";
};

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int emit(const Options& o, const Session& s, const std::string& command, const std::vector<CheckReport>& reports) {
  if (o.json)
    std::cout << reports_to_json(s.model.name, command, reports, o.timing).dump(2) << "\n";
  else
    std::cout << reports_to_table(reports, o.timing);
  return exit_code(reports);
}

CheckReport construction_report(const Session& s, const std::string& what, const std::string& object) {
  const auto& T = s.T();
  auto levels = [](CheckReport r, const Presheaf& P) { return r.fact("levels", join_ints(P.sizes())); };
  if (what.rfind("simplex:", 0) == 0) {
    const int n = std::stoi(what.substr(8));
    return levels(CheckReport::passed("construct.simplex." + std::to_string(n)), simplex(s.interval(), n).object());
  }
  if (what == "horn") return levels(CheckReport::passed("construct.horn"), T.horn().object());
  if (what == "equivalence") return levels(CheckReport::passed("construct.equivalence"), T.equivalence().object());
  if (object.empty()) throw ReferenceError("construction " + what + " needs --object");
  const auto X = resolve_object(s, object);
  if (what == "lift") return levels(CheckReport::passed("construct.lift(" + object + ")"), T.lift(X)->object);
  if (what == "scone") return levels(CheckReport::passed("construct.scone(" + object + ")"), T.scone(X)->object);
  if (what == "sigma") {
    auto r = CheckReport::passed("construct.sigma(" + object + ")");
    const auto& sigma = *T.sigma(X);
    return r.fact("source_levels", join_ints(sigma.source().sizes()))
        .fact("target_levels", join_ints(sigma.target().sizes()))
        .fact("iso", is_iso(sigma) ? "true" : "false");
  }
  throw ReferenceError("unknown construction '" + what + "'");
}

int run_export(const Options& o, const Session& s) {
  Presheaf F;
  ElementLabel label;
  std::optional<Simplex> simplex_shape;
  if (o.shape.rfind("simplex:", 0) == 0) {
    simplex_shape = simplex(s.interval(), std::stoi(o.shape.substr(8)));
    F = simplex_shape->object();
  } else if (o.shape == "horn") {
    F = s.T().horn().object();
  } else if (o.shape == "equivalence") {
    F = s.T().equivalence().object();
  } else {
    F = resolve_object(s, o.shape);
  }
  if (simplex_shape) {
    const auto& S = *simplex_shape;
    label = [&S](int c, int x) { return "(" + join_ints(S.tuple(c, x)) + ")"; };
  } else if (o.shape == "horn") {
    const auto& T = s.T();
    label = [&T](int c, int x) { return "(" + join_ints(T.triangle().tuple(c, T.horn().inclusion()(c, x))) + ")"; };
  }
  if (o.format == "dot")
    std::cout << presheaf_dot(o.shape, F, label);
  else
    std::cout << presheaf_table(o.shape, F, label).dump(2) << "\n";
  return 0;
}

int run(const std::string& command, const Options& o) {
  limits().max_elements = o.max_elements;
  limits().max_nat_nodes = o.max_nat_enum;
  auto model = resolve_model(o.model);
  if (command == "validate") {
    std::vector<CheckReport> rs;
    rs.push_back(validate_category(model.category));
    for (std::size_t k = 0; k < model.names.size(); ++k) {
      auto r = validate_presheaf(model.presheaves[k]);
      r.name = "presheaf.laws(" + model.names[k] + ")";
      rs.push_back(r);
    }
    rs.push_back(validate_interval(model.interval));
    auto s = make_session(std::move(model), split_names(o.sample));
    return emit(o, s, command, sort_reports(rs));
  }
  auto s = make_session(std::move(model), split_names(o.sample));
  if (command == "axioms") return emit(o, s, command, s.T().axioms().reports);
  if (command == "suite") return emit(o, s, command, run_suite(s, o.jobs));
  if (command == "export") return run_export(o, s);
  if (command == "construct") {
    std::vector<CheckReport> rs{construction_report(s, o.construction, o.object)};
    if (o.construction == "horn") rs.push_back(crosscheck_horn(s));
    if (o.construction == "scone") rs.push_back(crosscheck_scone(s, o.object));
    return emit(o, s, command, rs);
  }
  if (command == "check") {
    std::vector<CheckReport> rs;
    if (!o.witness_file.empty()) {
      std::ifstream in(o.witness_file);
      if (!in) throw ReferenceError("cannot open witness file " + o.witness_file);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("witness file: ") + e.what());
      }
      rs = replay_witnesses(s, doc);
    } else if (!o.check_name.empty()) {
      rs.push_back(evaluate_check(s, o.check_name));
    } else {
      if (o.object.empty() || o.property.empty())
        throw ReferenceError("check needs --object and --property, --name, or --witness");
      rs.push_back(check_property(s.T(), o.property, o.object, resolve_object(s, o.object), s.sample));
    }
    return emit(o, s, command, rs);
  }
  throw InternalError("unhandled command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite presheaf topos engine: interval axioms, completeness checks and theorem instances"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--model", o.model, "Built-in model name (set, degenerate, sset2, sset3, chainK) or JSON file")
      ->required();
  app.add_option("--sample", o.sample, "Comma-separated presheaf names replacing the model's object sample");
  app.add_flag("--json", o.json, "Print the report as JSON");
  app.add_flag("--timing", o.timing, "Include wall time per check (makes output run-dependent)");
  app.add_option("--jobs", o.jobs, "Worker threads for independent checks")->check(CLI::Range(1, 256));
  app.add_option("--max-elements", o.max_elements, "Largest object or hom-set the engine will build")
      ->capture_default_str();
  app.add_option("--max-nat-enum", o.max_nat_enum, "Search nodes per natural-transformation enumeration")
      ->capture_default_str();

  app.add_subcommand("validate", "Validate the model's category, presheaves and interval");
  app.add_subcommand("axioms", "Check the interval axioms");
  auto* check = app.add_subcommand("check", "Check one property, one named check, or replay witnesses");
  check->add_option("--object", o.object, "Object: a presheaf name, L(e) or Bot(e)");
  check->add_option("--property", o.property, "segal, rezk, based_segal, sierpinski, infinity_category, <kind>_well_complete");
  check->add_option("--name", o.check_name, "A report name, e.g. theorem.09.based_segal_set_is_sierpinski(I)");
  check->add_option("--witness", o.witness_file, "Report JSON whose failures are replayed");
  auto* construct = app.add_subcommand("construct", "Build a construction and print its level sizes");
  construct->add_option("--construction", o.construction, "simplex:N, horn, equivalence, lift, scone, sigma")
      ->required();
  construct->add_option("--object", o.object, "Object for lift, scone and sigma");
  app.add_subcommand("suite", "Axioms, all tracked implications and Fiore instances over the sample");
  auto* exp = app.add_subcommand("export", "Element tables as JSON or DOT");
  exp->add_option("--shape", o.shape, "simplex:N, horn, equivalence, or an object expression")->required();
  exp->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const LawError& e) {
    std::cerr << "law violation: " << e.what() << "\n";
    return kExitInput;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ReferenceError& e) {
    std::cerr << "reference error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
