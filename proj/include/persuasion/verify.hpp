#pragma once

// Named verification suites: each runs a family of checks against the
// closed-form results and reports measured vs. expected values.

#include <cstdint>
#include <string>
#include <vector>

#include "persuasion/monotone_regret.hpp"

namespace persuasion {

struct CheckRow {
  std::string suite;
  std::string name;
  double measured;
  double expected;
  double tolerance;
  bool pass;
};

struct VerifyOptions {
  std::vector<double> alphas{0.25, kInvE, 0.5};
  std::size_t game_size = 2001;
  double game_eps = 2e-3;
  int sweep_grid = 400;
  int n = 16;
  std::uint64_t seed = 0;
};

/// lemma4, lemma5, prop1, prop2, prop4, thm2 (sorted).
std::vector<std::string> suite_names();
/// Throws InstanceError for an unknown suite.
std::vector<CheckRow> run_suite(const std::string& name,
                                const VerifyOptions& options);

}  // namespace persuasion
