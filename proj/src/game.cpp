#include "fogsim/game.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fogsim/cost.hpp"
#include "fogsim/rng.hpp"

namespace fogsim {

double potential(const Scenario& s, const OffloadProfile& p) {
  require_feasible(s, p);
  const OffloadProfile solo = all_local_profile(s);
  double q_sum = 0.0;
  double q_solo_sum = 0.0;
  for (int n = 0; n < s.n_users(); ++n) {
    const double w = s.users[n].weight_time;
    q_sum += qoe(s, n, p[n], p) / w;
    q_solo_sum += qoe(s, n, p[n], solo) / w;
  }
  return (q_sum + q_solo_sum) / 2.0;
}

Strategy best_response(const Scenario& s, int n, const OffloadProfile& others) {
  const std::vector<Strategy> options = feasible_strategies(s.users[n]);
  std::vector<double> values(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) {
    values[i] = qoe(s, n, options[i], others);
  }
  const double best = *std::max_element(values.begin(), values.end());
  // Keep the current strategy on ties; otherwise the first maximizer in
  // [Local, ascending server id] order.
  const Strategy current = others[n];
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (values[i] == best && options[i] == current) return current;
  }
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (values[i] == best) return options[i];
  }
  return Strategy::local();  // unreachable
}

namespace {

std::vector<int> visit_order(const Scenario& s, const DynamicsConfig& cfg) {
  std::vector<int> order(s.users.size());
  std::iota(order.begin(), order.end(), 0);
  if (cfg.order == UpdateOrder::SeededShuffle) {
    SplitMix64 rng(cfg.shuffle_seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
  }
  return order;
}

int effective_max_rounds(const Scenario& s, const DynamicsConfig& cfg) {
  if (cfg.max_rounds > 0) return cfg.max_rounds;
  return 10 * std::max(1, s.n_users()) *
         (static_cast<int>(s.servers.size()) + 1);
}

EquilibriumReport finalize(const Scenario& s, EquilibriumReport report) {
  report.per_user_qoe.resize(s.users.size());
  for (int n = 0; n < s.n_users(); ++n) {
    report.per_user_qoe[n] = qoe(s, n, report.profile[n], report.profile);
  }
  report.social_cost = social_cost(s, report.profile);
  return report;
}

// Shared round-robin loop. A visited user adopts `select`'s choice when it
// strictly beats the improvement threshold; a pass with no adoption ends
// the run.
template <typename SelectFn>
EquilibriumReport run_dynamics(const Scenario& s, const DynamicsConfig& cfg,
                               const OffloadProfile& init, SelectFn select) {
  require_feasible(s, init);
  const std::vector<int> order = visit_order(s, cfg);
  const int max_rounds = effective_max_rounds(s, cfg);

  EquilibriumReport report;
  report.profile = init;
  report.potential_trace.push_back(potential(s, report.profile));

  while (report.rounds < max_rounds) {
    ++report.rounds;
    bool changed = false;
    for (int n : order) {
      Strategy next;
      if (!select(n, report.profile, &next)) continue;
      report.profile[n] = next;
      ++report.updates;
      report.potential_trace.push_back(potential(s, report.profile));
      changed = true;
    }
    if (!changed) {
      report.converged = true;
      break;
    }
  }
  return finalize(s, std::move(report));
}

}  // namespace

EquilibriumReport run_best_response(const Scenario& s,
                                    const DynamicsConfig& cfg,
                                    const OffloadProfile& init) {
  if (cfg.epsilon != 0.0) {
    throw std::invalid_argument("best response requires epsilon == 0");
  }
  return run_dynamics(s, cfg, init,
                      [&s](int n, const OffloadProfile& p, Strategy* out) {
                        const Strategy br = best_response(s, n, p);
                        if (!(qoe(s, n, br, p) > qoe(s, n, p[n], p))) {
                          return false;
                        }
                        *out = br;
                        return true;
                      });
}

EquilibriumReport run_epsilon_better_response(const Scenario& s,
                                              const DynamicsConfig& cfg,
                                              const OffloadProfile& init) {
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("better response requires epsilon > 0");
  }
  const double eps = cfg.epsilon;
  return run_dynamics(
      s, cfg, init, [&s, eps](int n, const OffloadProfile& p, Strategy* out) {
        const double current = qoe(s, n, p[n], p);
        // Maximum-improvement member of the better-response set; first in
        // [Local, ascending server id] order on ties.
        double best_gain = eps;
        bool found = false;
        for (Strategy a : feasible_strategies(s.users[n])) {
          const double gain = qoe(s, n, a, p) - current;
          if (gain > best_gain) {
            best_gain = gain;
            *out = a;
            found = true;
          }
        }
        return found;
      });
}

bool is_nash(const Scenario& s, const OffloadProfile& p) {
  return is_epsilon_nash(s, p, 0.0);
}

bool is_epsilon_nash(const Scenario& s, const OffloadProfile& p, double eps) {
  require_feasible(s, p);
  for (int n = 0; n < s.n_users(); ++n) {
    const double current = qoe(s, n, p[n], p);
    for (Strategy a : feasible_strategies(s.users[n])) {
      if (qoe(s, n, a, p) > current + eps) return false;
    }
  }
  return true;
}

double better_response_update_bound(const Scenario& s, double eps) {
  double max_weight = 0.0;
  double weighted_local = 0.0;
  for (const User& u : s.users) {
    max_weight = std::max(max_weight, u.weight_time);
    weighted_local += local_cost(u).weighted_cost / u.weight_time;
  }
  return (max_weight / eps) * weighted_local;
}

}  // namespace fogsim
