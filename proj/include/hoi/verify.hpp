#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hoi/distribution.hpp"

namespace hoi {

/// Random pmf over the given alphabet: i.i.d. Exp(1) weights, normalized.
/// With probability zero_fraction each state is zeroed first (at least one
/// state always keeps mass), so sparse tables are exercised too.
DiscreteJointDistribution random_distribution(const std::vector<int>& alphabet_sizes, std::mt19937_64& engine,
                                              double zero_fraction = 0.0);

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Number of individual assertions behind the check.
  long cases = 0;
  /// Largest violation seen, in bits (0 when every case passed exactly).
  double worst = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int random_systems = 1000;
  std::uint64_t seed = 0;
};

/// Invariant suite over built-in gates, random discrete systems and the
/// hexagon Ising model at infinite temperature.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace hoi
