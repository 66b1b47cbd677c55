// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_REPORT_HPP
#define PHOA_REPORT_HPP

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phoa/core.hpp"

namespace phoa {

inline constexpr int kReportFormatVersion = 1;

using ordered_json = nlohmann::ordered_json;

inline ordered_json witness_to_json(const Witness& w) {
  ordered_json j;
  j["kind"] = w.kind;
  j["stage"] = w.stage;
  j["object"] = w.object;
  j["elements"] = w.elements;
  j["detail"] = w.detail;
  return j;
}

inline Witness witness_from_json(const nlohmann::json& j) {
  try {
    Witness w;
    w.kind = j.at("kind").get<std::string>();
    w.stage = j.at("stage").get<int>();
    w.object = j.at("object").get<std::string>();
    w.elements = j.at("elements").get<std::vector<int>>();
    w.detail = j.value("detail", std::string());
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("witness: ") + e.what());
  }
}

/// Wall time is left out unless asked for, so equal inputs give equal bytes.
inline ordered_json report_to_json(const CheckReport& r, bool timing = false) {
  ordered_json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  if (r.status == Status::skip) j["reason"] = r.reason;
  if (!r.facts.empty()) {
    ordered_json f = ordered_json::object();
    for (const auto& [k, v] : r.facts) f[k] = v;
    j["facts"] = f;
  }
  if (timing) j["millis"] = r.millis;
  return j;
}

inline ordered_json reports_to_json(const std::string& model, const std::string& command,
                                    const std::vector<CheckReport>& reports, bool timing = false) {
  ordered_json j;
  j["format_version"] = kReportFormatVersion;
  j["model"] = model;
  j["command"] = command;
  ordered_json list = ordered_json::array();
  for (const auto& r : reports) list.push_back(report_to_json(r, timing));
  j["reports"] = list;
  return j;
}

/// One line per report: status, name, then the witness or skip reason.
inline std::string reports_to_table(const std::vector<CheckReport>& reports, bool timing = false) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << std::left << std::setw(5) << to_string(r.status) << ' ' << r.name;
    if (timing) out << "  [" << std::fixed << std::setprecision(1) << r.millis << " ms]";
    if (r.witness) {
      const auto& w = *r.witness;
      out << "\n      witness " << w.kind;
      if (w.stage >= 0) out << " at " << w.object << " (stage " << w.stage << ")";
      out << " elements [" << join_ints(w.elements) << "]";
      if (!w.detail.empty()) out << ": " << w.detail;
    }
    if (r.status == Status::skip) out << "\n      " << r.reason;
    for (const auto& [k, v] : r.facts) out << "\n      " << k << " = " << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace phoa

#endif  // PHOA_REPORT_HPP
