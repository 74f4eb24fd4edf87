#pragma once

#include <cstdint>
#include <vector>

#include "fogsim/model.hpp"

namespace fogsim {

enum class UpdateOrder { ByUserId, SeededShuffle };

struct DynamicsConfig {
  double epsilon = 0.0;  // 0 = exact best response
  // 0 = default safety valve of 10 * N * (S + 2) rounds.
  int max_rounds = 0;
  UpdateOrder order = UpdateOrder::ByUserId;
  std::uint64_t shuffle_seed = 0;
};

struct EquilibriumReport {
  OffloadProfile profile;
  long updates = 0;  // strategy changes adopted
  int rounds = 0;    // full passes over the users
  bool converged = false;
  // Potential after init, then after each adopted update. Strictly
  // increasing whenever the dynamics are correct.
  std::vector<double> potential_trace;
  std::vector<double> per_user_qoe;
  double social_cost = 0.0;
};

/// Weighted potential P(A) = (Q(A) + Qbar(A)) / 2 where Q sums each user's
/// QoE divided by its time weight and Qbar does the same with all other
/// users forced local. A unilateral move by user n changes P by exactly
/// (qoe change) / weight_time[n].
double potential(const Scenario& s, const OffloadProfile& p);

/// QoE-maximizing strategy for user n against fixed opponents. Ties are
/// broken by: keep n's current strategy in `others` if it attains the max,
/// else Local, else the lowest server id.
Strategy best_response(const Scenario& s, int n, const OffloadProfile& others);

/// Round-robin best-response dynamics. A visited user switches only on a
/// strict QoE improvement; a full pass with no change terminates at a pure
/// Nash equilibrium. Requires cfg.epsilon == 0.
EquilibriumReport run_best_response(const Scenario& s,
                                    const DynamicsConfig& cfg,
                                    const OffloadProfile& init);

/// Round-robin better-response dynamics: a user moves only when some
/// strategy improves its QoE by more than cfg.epsilon, adopting the
/// maximum-improvement one. Terminates at an epsilon-Nash equilibrium.
/// Requires cfg.epsilon > 0.
EquilibriumReport run_epsilon_better_response(const Scenario& s,
                                              const DynamicsConfig& cfg,
                                              const OffloadProfile& init);

bool is_nash(const Scenario& s, const OffloadProfile& p);

/// True iff no user can gain more than eps by a unilateral deviation.
bool is_epsilon_nash(const Scenario& s, const OffloadProfile& p, double eps);

/// Upper bound on the number of better-response updates for a given eps:
/// (max_n weight_time / eps) * sum_n local_cost_n / weight_time_n.
double better_response_update_bound(const Scenario& s, double eps);

}  // namespace fogsim
