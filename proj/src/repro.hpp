#pragma once

#include <string>
#include <vector>

namespace bell {

struct ReproResult {
  std::string text;
  bool pass = false;
};

// Scenario names: chsh, gisin3, gisin6, fr2, fr3, fr4, fr5, rotated, d6.
// Each recomputes the published values for that family, checks them against
// the expected constants and runtime caps, and reports PASS/FAIL per check.
// When outdir is nonempty, scenarios with plot series write headerless CSV
// files there.
ReproResult run_repro(const std::string& scenario, const std::string& outdir = "");

const std::vector<std::string>& repro_scenarios();

}  // namespace bell
