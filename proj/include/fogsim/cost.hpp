#pragma once

#include "fogsim/model.hpp"

namespace fogsim {

struct TimeComponents {
  double transmit_s = 0.0;
  double rtt_s = 0.0;
  double compute_s = 0.0;

  double total() const { return transmit_s + rtt_s + compute_s; }
};

/// Energy/time cost of executing one task, plus the lambda-weighted scalar
/// the game optimizes.
struct CostBreakdown {
  double energy_j = 0.0;
  double time_s = 0.0;
  double weighted_cost = 0.0;
  TimeComponents time_components;
};

/// Energy coefficient alpha = kappa * (cpu_hz / 1e9)^phi + varrho.
/// The clock enters in GHz; in Hz the coefficient would be astronomically
/// large for any realistic kappa.
double alpha(const Device& d);

/// Cost of executing the task on the user's own device.
CostBreakdown local_cost(const User& u);

/// Computation time of user n's task on server s. The cloud has dedicated
/// capacity; a fog node is processor-shared among co-located tasks, with
/// shorter tasks departing early:
///   (w_n / f_s) * (1 + sum_{m != n at s} min(w_m / w_n, 1)).
/// User n's own row in `others` is ignored.
double compute_delay(const Scenario& s, int n, int server_id,
                     const OffloadProfile& others);

/// Cost of offloading user n's task to server_id given the other users'
/// strategies: transmit energy + weighted (transmit + rtt + compute) time.
CostBreakdown offload_cost(const Scenario& s, int n, int server_id,
                           const OffloadProfile& others);

/// QoE: local weighted cost minus offload weighted cost; 0 when local.
/// May be negative.
double qoe(const Scenario& s, int n, Strategy strat,
           const OffloadProfile& others);

/// Weighted cost the user actually pays under `strat`.
/// Identity: user_cost + qoe == local weighted cost.
double user_cost(const Scenario& s, int n, Strategy strat,
                 const OffloadProfile& others);

/// Aggregate weighted cost of all users under profile p.
double social_cost(const Scenario& s, const OffloadProfile& p);

/// Change in social cost if user n switched to `to`, everything else fixed.
/// O(occupancy) instead of O(N * occupancy) for a full recompute.
double social_cost_delta(const Scenario& s, const OffloadProfile& p, int n,
                         Strategy to);

}  // namespace fogsim
