#include "fogsim/oracle.hpp"

#include <algorithm>
#include <limits>

#include "fogsim/cost.hpp"
#include "fogsim/game.hpp"
#include "fogsim/rng.hpp"

namespace fogsim {

std::uint64_t profile_space_size(const Scenario& s) {
  std::uint64_t size = 1;
  for (const User& u : s.users) {
    const std::uint64_t k = 1 + u.links.size();
    if (size > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= k;
  }
  return size;
}

void for_each_profile(const Scenario& s, std::uint64_t cap,
                      const std::function<void(const OffloadProfile&)>& fn) {
  const std::uint64_t size = profile_space_size(s);
  if (size > cap) throw EnumerationCapExceeded(size);

  std::vector<std::vector<Strategy>> options;
  options.reserve(s.users.size());
  for (const User& u : s.users) options.push_back(feasible_strategies(u));

  const int n = s.n_users();
  std::vector<std::size_t> idx(n, 0);
  OffloadProfile p(n);
  for (int i = 0; i < n; ++i) p[i] = options[i][0];
  while (true) {
    fn(p);
    // Odometer: last user advances fastest.
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < options[pos].size()) {
        p[pos] = options[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      p[pos] = options[pos][0];
      --pos;
    }
    if (pos < 0) break;
  }
}

std::vector<OffloadProfile> enumerate_equilibria(const Scenario& s,
                                                 std::uint64_t cap) {
  std::vector<OffloadProfile> equilibria;
  for_each_profile(s, cap, [&](const OffloadProfile& p) {
    if (is_nash(s, p)) equilibria.push_back(p);
  });
  return equilibria;
}

namespace {

// Greedy coordinate descent on the social cost: round-robin, each user
// moves to its cost-minimizing strategy, until a full pass changes nothing.
double descend_to_local_minimum(const Scenario& s, OffloadProfile* p) {
  double cost = social_cost(s, *p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n < s.n_users(); ++n) {
      Strategy best = (*p)[n];
      double best_delta = 0.0;
      for (Strategy a : feasible_strategies(s.users[n])) {
        const double delta = social_cost_delta(s, *p, n, a);
        if (delta < best_delta) {
          best_delta = delta;
          best = a;
        }
      }
      if (best_delta < 0.0) {
        (*p)[n] = best;
        cost += best_delta;
        changed = true;
      }
    }
  }
  return cost;
}

OffloadProfile random_feasible_profile(const Scenario& s, SplitMix64* rng) {
  OffloadProfile p(s.users.size());
  for (int n = 0; n < s.n_users(); ++n) {
    const auto options = feasible_strategies(s.users[n]);
    p[n] = options[rng->below(options.size())];
  }
  return p;
}

constexpr int kHeuristicStarts = 10;

OptimumResult heuristic_optimum(const Scenario& s) {
  OptimumResult best;
  best.exact = false;
  best.profile = all_local_profile(s);
  best.cost = descend_to_local_minimum(s, &best.profile);

  OffloadProfile ne =
      run_best_response(s, DynamicsConfig{}, all_local_profile(s)).profile;
  const double ne_cost = descend_to_local_minimum(s, &ne);
  if (ne_cost < best.cost) {
    best.cost = ne_cost;
    best.profile = ne;
  }

  for (int start = 0; start < kHeuristicStarts; ++start) {
    SplitMix64 rng = SplitMix64::substream(0x0f7a11c0u, start);
    OffloadProfile p = random_feasible_profile(s, &rng);
    const double cost = descend_to_local_minimum(s, &p);
    if (cost < best.cost) {
      best.cost = cost;
      best.profile = p;
    }
  }
  return best;
}

}  // namespace

OptimumResult social_optimum(const Scenario& s, std::uint64_t cap) {
  if (profile_space_size(s) > cap) return heuristic_optimum(s);
  OptimumResult best;
  best.exact = true;
  best.cost = std::numeric_limits<double>::infinity();
  for_each_profile(s, cap, [&](const OffloadProfile& p) {
    const double cost = social_cost(s, p);
    if (cost < best.cost) {
      best.cost = cost;
      best.profile = p;
    }
  });
  return best;
}

PoAReport poa(const Scenario& s, std::uint64_t cap) {
  PoAReport report;

  // Occupancy branch: connectivity-based upper bound on how many users a
  // fog node can host, which dominates any realized occupancy. Clamped to 1
  // so the bound stays meaningful when no fog node exists.
  std::vector<int> in_degree(s.servers.size(), 0);
  for (const User& u : s.users) {
    for (const auto& [sid, link] : u.links) {
      (void)link;
      if (!s.is_cloud(sid)) ++in_degree[sid];
    }
  }
  int max_in_degree = 1;
  for (std::size_t sid = 0; sid < s.servers.size(); ++sid) {
    max_in_degree = std::max(max_in_degree, in_degree[sid]);
  }
  report.bound_occupancy = max_in_degree;

  // Cost-ratio branch: all-Local cost over the sum of standalone minima
  // (each user's cheapest strategy when everyone else computes locally).
  const OffloadProfile solo = all_local_profile(s);
  double local_sum = 0.0;
  double standalone_sum = 0.0;
  for (int n = 0; n < s.n_users(); ++n) {
    local_sum += local_cost(s.users[n]).weighted_cost;
    double best = std::numeric_limits<double>::infinity();
    for (Strategy a : feasible_strategies(s.users[n])) {
      best = std::min(best, user_cost(s, n, a, solo));
    }
    standalone_sum += best;
  }
  report.bound_ratio = standalone_sum > 0.0
                           ? local_sum / standalone_sum
                           : std::numeric_limits<double>::infinity();
  report.bound = std::min(report.bound_occupancy, report.bound_ratio);

  if (profile_space_size(s) <= cap) {
    const std::vector<OffloadProfile> equilibria = enumerate_equilibria(s, cap);
    report.worst_ne_cost = -std::numeric_limits<double>::infinity();
    report.best_ne_cost = std::numeric_limits<double>::infinity();
    for (const OffloadProfile& p : equilibria) {
      const double cost = social_cost(s, p);
      report.worst_ne_cost = std::max(report.worst_ne_cost, cost);
      report.best_ne_cost = std::min(report.best_ne_cost, cost);
    }
    const OptimumResult opt = social_optimum(s, cap);
    report.optimal_cost = opt.cost;
    report.exact = opt.exact;
  } else {
    const EquilibriumReport ne =
        run_best_response(s, DynamicsConfig{}, all_local_profile(s));
    report.worst_ne_cost = ne.social_cost;  // lower bound on the true worst
    report.best_ne_cost = ne.social_cost;
    report.optimal_cost = heuristic_optimum(s).cost;
    report.exact = false;
  }
  report.poa = report.worst_ne_cost / report.optimal_cost;
  return report;
}

}  // namespace fogsim
