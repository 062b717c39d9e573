#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solhup/rng.hpp"

namespace solhup {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
  double seconds = 0.0;
};

/// The ten desk-scale verification criteria, each run at its pinned tolerance
/// and runtime budget. Randomized families derive from the given seed.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = SplitMix64::default_seed);

}  // namespace solhup
