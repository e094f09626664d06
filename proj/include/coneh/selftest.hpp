#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coneh {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::int64_t trials = 0;
  std::string detail;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SelftestCheck> checks;

  bool passed() const;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Runs the randomized invariant suite. Each trial draws from its own stream
/// seeded by (seed, check, trial), so results do not depend on thread count.
SelftestReport run_selftest(std::uint64_t seed = kDefaultSeed);

}  // namespace coneh
