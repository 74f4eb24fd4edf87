#include "fogsim/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fogsim {

double alpha(const Device& d) {
  const double f_ghz = d.cpu_hz / 1e9;
  return d.kappa * std::pow(f_ghz, d.phi) + d.varrho;
}

CostBreakdown local_cost(const User& u) {
  const double exec_s = u.task.workload_cycles() / u.device.cpu_hz;
  CostBreakdown c;
  c.time_components.compute_s = exec_s;
  c.time_s = exec_s;
  c.energy_j = alpha(u.device) * exec_s;
  c.weighted_cost = u.weight_energy * c.energy_j + u.weight_time * c.time_s;
  return c;
}

double compute_delay(const Scenario& s, int n, int server_id,
                     const OffloadProfile& others) {
  const User& u = s.users[n];
  if (u.links.count(server_id) == 0) {
    throw InfeasibleProfileError("user " + std::to_string(n) +
                                 " has no link to server " +
                                 std::to_string(server_id));
  }
  const double w_n = u.task.workload_cycles();
  const double f_s = s.servers[server_id].capacity_hz;
  if (s.is_cloud(server_id)) return w_n / f_s;

  double share = 1.0;
  for (std::size_t m = 0; m < others.size(); ++m) {
    if (static_cast<int>(m) == n) continue;
    if (others[m].is_local() || others[m].server() != server_id) continue;
    const double w_m = s.users[m].task.workload_cycles();
    share += std::min(w_m / w_n, 1.0);
  }
  return (w_n / f_s) * share;
}

CostBreakdown offload_cost(const Scenario& s, int n, int server_id,
                           const OffloadProfile& others) {
  const User& u = s.users[n];
  auto it = u.links.find(server_id);
  if (it == u.links.end()) {
    throw InfeasibleProfileError("user " + std::to_string(n) +
                                 " has no link to server " +
                                 std::to_string(server_id));
  }
  const Link& link = it->second;
  CostBreakdown c;
  c.time_components.transmit_s = u.task.size_bits / link.rate_bps;
  c.time_components.rtt_s = link.rtt_s;
  c.time_components.compute_s = compute_delay(s, n, server_id, others);
  c.time_s = c.time_components.total();
  c.energy_j = link.energy_j_per_s * c.time_components.transmit_s;
  c.weighted_cost = u.weight_energy * c.energy_j + u.weight_time * c.time_s;
  return c;
}

double qoe(const Scenario& s, int n, Strategy strat,
           const OffloadProfile& others) {
  if (strat.is_local()) return 0.0;
  return local_cost(s.users[n]).weighted_cost -
         offload_cost(s, n, strat.server(), others).weighted_cost;
}

double user_cost(const Scenario& s, int n, Strategy strat,
                 const OffloadProfile& others) {
  if (strat.is_local()) return local_cost(s.users[n]).weighted_cost;
  return offload_cost(s, n, strat.server(), others).weighted_cost;
}

double social_cost(const Scenario& s, const OffloadProfile& p) {
  require_feasible(s, p);
  double total = 0.0;
  for (int n = 0; n < s.n_users(); ++n) {
    total += user_cost(s, n, p[n], p);
  }
  return total;
}

namespace {

// Per-task slowdown user n inflicts on a co-located task of user m at fog s:
// (w_m / f_s) * min(w_n / w_m, 1).
double sharing_term(const Scenario& s, int victim, int mover, int server_id) {
  const double w_m = s.users[victim].task.workload_cycles();
  const double w_n = s.users[mover].task.workload_cycles();
  const double f_s = s.servers[server_id].capacity_hz;
  return (w_m / f_s) * std::min(w_n / w_m, 1.0);
}

// Total weighted-cost change of the other users when `mover` joins (+1)
// or leaves (-1) fog node server_id.
double neighbors_delta(const Scenario& s, const OffloadProfile& p, int mover,
                       int server_id, double sign) {
  if (s.is_cloud(server_id)) return 0.0;
  double delta = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (static_cast<int>(m) == mover) continue;
    if (p[m].is_local() || p[m].server() != server_id) continue;
    delta += sign * s.users[m].weight_time *
             sharing_term(s, static_cast<int>(m), mover, server_id);
  }
  return delta;
}

}  // namespace

double social_cost_delta(const Scenario& s, const OffloadProfile& p, int n,
                         Strategy to) {
  const Strategy from = p[n];
  if (from == to) return 0.0;
  double delta = user_cost(s, n, to, p) - user_cost(s, n, from, p);
  if (!from.is_local()) delta += neighbors_delta(s, p, n, from.server(), -1.0);
  if (!to.is_local()) delta += neighbors_delta(s, p, n, to.server(), +1.0);
  return delta;
}

}  // namespace fogsim
