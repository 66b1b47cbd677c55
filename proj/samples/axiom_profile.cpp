// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

// Prints the interval axioms of a model and the completeness properties of
// its carrier. Usage: axiom_profile <model name or file>

#include <iostream>

#include "phoa/phoa.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: axiom_profile <model>\n";
    return 2;
  }
  try {
    auto s = phoa::make_session(phoa::resolve_model(argv[1]));
    std::vector<phoa::CheckReport> rs = s.T().axioms().reports;
    for (const char* p : {"segal", "rezk", "based_segal", "sierpinski"})
      rs.push_back(phoa::check_property(s.T(), p, "I", s.interval().carrier, s.sample));
    std::cout << phoa::reports_to_table(rs);
  } catch (const phoa::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
