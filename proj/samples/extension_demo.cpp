// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

// Extends every map 1⊥ → I along σ: 1⊥ → L(1) in the truncated simplicial
// model and prints the extensions as tables.

#include <iostream>

#include "phoa/phoa.hpp"

int main() {
  using namespace phoa;
  IntervalTopos T(model_truncated_sset(3).interval);
  const auto& I = T.interval();
  auto point = terminal(I.base());
  const auto& bot = T.scone(point)->object;
  for (const auto& f : enumerate_nats(bot, I.carrier)) {
    auto ext = tilde_extension(T, point, I.carrier, f);
    std::cout << "f = [" << join_ints(f.flat()) << "]  extension = [" << join_ints(ext.map.flat()) << "]  "
              << to_string(ext.report.status) << "\n";
  }
  return 0;
}
