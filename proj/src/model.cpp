#include "fogsim/model.hpp"

#include <cmath>
#include <string>

namespace fogsim {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> violations;
  auto bad = [&violations](const std::string& msg) { violations.push_back(msg); };

  int n_cloud = 0;
  for (std::size_t i = 0; i < s.servers.size(); ++i) {
    const Server& sv = s.servers[i];
    if (sv.id != static_cast<int>(i)) {
      bad("servers[" + std::to_string(i) + "]: ids must be 0..S contiguous");
    }
    if (!finite_positive(sv.capacity_hz)) {
      bad("server " + std::to_string(sv.id) + ": capacity_hz must be > 0");
    }
    if (sv.kind == ServerKind::Cloud) {
      ++n_cloud;
      if (sv.id != kCloudServerId) {
        bad("server " + std::to_string(sv.id) + ": cloud server must have id 0");
      }
    }
  }
  if (n_cloud != 1) {
    bad("scenario: exactly one cloud server required, found " +
        std::to_string(n_cloud));
  }

  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const User& u = s.users[i];
    const std::string who = "user " + std::to_string(u.id);
    if (u.id != static_cast<int>(i)) {
      bad("users[" + std::to_string(i) + "]: ids must be 0..N-1 contiguous");
    }
    if (!finite_positive(u.task.size_bits)) bad(who + ": size_bits must be > 0");
    if (!finite_positive(u.task.density_cycles_per_bit)) {
      bad(who + ": density_cycles_per_bit must be > 0");
    }
    if (!finite_positive(u.device.cpu_hz)) bad(who + ": cpu_hz must be > 0");
    if (!finite_nonneg(u.device.kappa)) bad(who + ": kappa must be >= 0");
    if (!finite_nonneg(u.device.phi)) bad(who + ": phi must be >= 0");
    if (!finite_nonneg(u.device.varrho)) bad(who + ": varrho must be >= 0");
    if (!(std::isfinite(u.weight_energy) && u.weight_energy >= 0.0 &&
          u.weight_energy <= 1.0)) {
      bad(who + ": weight_energy must be in [0,1]");
    }
    if (!(std::isfinite(u.weight_time) && u.weight_time > 0.0 &&
          u.weight_time <= 1.0)) {
      bad(who + ": weight_time must be > 0 and <= 1");
    }
    for (const auto& [sid, link] : u.links) {
      const std::string lwho = who + " link to server " + std::to_string(sid);
      if (sid < 0 || sid >= static_cast<int>(s.servers.size())) {
        bad(lwho + ": unknown server");
      }
      if (!finite_positive(link.rate_bps)) bad(lwho + ": rate_bps must be > 0");
      if (!finite_nonneg(link.energy_j_per_s)) {
        bad(lwho + ": energy_j_per_s must be >= 0");
      }
      if (!finite_nonneg(link.rtt_s)) bad(lwho + ": rtt_s must be >= 0");
    }
  }
  return violations;
}

std::vector<Strategy> feasible_strategies(const User& u) {
  std::vector<Strategy> out;
  out.reserve(1 + u.links.size());
  out.push_back(Strategy::local());
  for (const auto& [sid, link] : u.links) {
    (void)link;
    out.push_back(Strategy::offload(sid));
  }
  return out;
}

bool strategy_feasible(const User& u, Strategy strat) {
  return strat.is_local() || u.links.count(strat.server()) > 0;
}

bool profile_feasible(const Scenario& s, const OffloadProfile& p) {
  if (p.size() != s.users.size()) return false;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!strategy_feasible(s.users[n], p[n])) return false;
  }
  return true;
}

void require_feasible(const Scenario& s, const OffloadProfile& p) {
  if (p.size() != s.users.size()) {
    throw InfeasibleProfileError("profile length " + std::to_string(p.size()) +
                                 " != user count " +
                                 std::to_string(s.users.size()));
  }
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!strategy_feasible(s.users[n], p[n])) {
      throw InfeasibleProfileError(
          "user " + std::to_string(n) + " offloads to server " +
          std::to_string(p[n].server()) + " without a link");
    }
  }
}

OffloadProfile all_local_profile(const Scenario& s) {
  return OffloadProfile(s.users.size(), Strategy::local());
}

}  // namespace fogsim
