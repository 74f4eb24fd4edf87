#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fogsim/model.hpp"

namespace fogsim {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct EnumerationCapExceeded : std::runtime_error {
  explicit EnumerationCapExceeded(std::uint64_t size)
      : std::runtime_error("strategy-space size " + std::to_string(size) +
                           " exceeds the enumeration cap"),
        product_size(size) {}
  std::uint64_t product_size;
};

/// Number of feasible profiles, saturating at UINT64_MAX.
std::uint64_t profile_space_size(const Scenario& s);

/// Visits every feasible profile exactly once, lexicographic by user id
/// (user 0 most significant, [Local, ascending server id] per user).
/// Throws EnumerationCapExceeded before visiting anything if the product
/// space exceeds `cap`.
void for_each_profile(const Scenario& s, std::uint64_t cap,
                      const std::function<void(const OffloadProfile&)>& fn);

/// All pure Nash equilibria, by exhaustive scan. Nonempty for every finite
/// instance (the game is a weighted potential game).
std::vector<OffloadProfile> enumerate_equilibria(
    const Scenario& s, std::uint64_t cap = kDefaultEnumerationCap);

struct OptimumResult {
  OffloadProfile profile;
  double cost = 0.0;
  bool exact = false;  // true iff found by exhaustive enumeration
};

/// Social-cost minimizer. Exhaustive when the strategy space fits under the
/// cap; otherwise the best of coordinate descent from several seeded starts,
/// all-Local, and the best-response fixed point (exact = false).
OptimumResult social_optimum(const Scenario& s,
                             std::uint64_t cap = kDefaultEnumerationCap);

struct PoAReport {
  double worst_ne_cost = 0.0;
  double best_ne_cost = 0.0;
  double optimal_cost = 0.0;
  double poa = 0.0;
  // Occupancy branch of the bound: max fog in-degree, at least 1.
  double bound_occupancy = 0.0;
  // Cost-ratio branch: sum of local costs over sum of standalone minima.
  double bound_ratio = 0.0;
  double bound = 0.0;  // min of the two branches
  // True iff both the NE set and the optimum were exhaustive. When false,
  // worst_ne_cost comes from the dynamics fixed point and is only a lower
  // bound on the true worst equilibrium.
  bool exact = false;
};

PoAReport poa(const Scenario& s, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace fogsim
