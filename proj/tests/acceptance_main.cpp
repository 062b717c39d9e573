// Runs every acceptance criterion at its pinned tolerance and prints one
// pass/fail line per criterion. Exit status is the number of failures.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "solhup/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = solhup::SplitMix64::default_seed;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 0);
    } else {
      std::fprintf(stderr, "usage: %s [--seed N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<solhup::CriterionResult> results = solhup::run_acceptance(seed);
  int failures = 0;
  for (const solhup::CriterionResult& r : results) {
    std::printf("[%2d/%zu] %s %-26s (%6.2f s)  %s\n", r.id, results.size(),
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.details.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("acceptance: %zu/%zu criteria passed (seed %llu)\n", results.size() - failures,
              results.size(), static_cast<unsigned long long>(seed));
  return failures;
}
