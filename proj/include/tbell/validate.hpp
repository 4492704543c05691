#pragma once

// Named invariant suites behind the `validate` subcommand: entropy
// identities, engine cross-checks, closed-form reproduction, and the
// satisfied/violated sides of the inequality.

#include "tbell/grover.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tbell {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::uint64_t cases = 0;
  std::string detail;  // first counterexample when failed
};

struct ValidateOptions {
  int n_max = 10;          // upper n for engine-backed suites (<= 12)
  std::uint64_t seed = 1;  // randomized entropy suites
  // Check-harness seam: the rotation-law and disentanglement suites build
  // their Grover step through this hook so a faulty diffusion can be
  // injected. Defaults to the real operator.
  std::function<SubspaceState(SubspaceState)> subspace_diffusion;
};

std::vector<CheckResult> run_validation(const ValidateOptions& options = {});

}  // namespace tbell
