#pragma once

#include <vector>

#include "fogsim/model.hpp"
#include "fogsim/rng.hpp"

namespace fogsim::testutil {

/// Hand-built user, independent of the scenario generator.
inline User make_user(int id, double size_bits, double density, double cpu_hz,
                      double weight_energy = 1.0, double weight_time = 1.0) {
  User u;
  u.id = id;
  u.task = {size_bits, density};
  u.device = {cpu_hz, 0.33, 3.0, 0.1};
  u.weight_energy = weight_energy;
  u.weight_time = weight_time;
  return u;
}

inline Server cloud_server(double capacity_hz = 4e9) {
  return {kCloudServerId, ServerKind::Cloud, capacity_hz};
}

inline Server fog_server(int id, double capacity_hz) {
  return {id, ServerKind::Fog, capacity_hz};
}

/// Random small scenario, independent of the generator module: a cloud and
/// up to `max_fog` fog nodes, each user linked to a random link subset.
inline Scenario random_scenario(SplitMix64* rng, int n_users, int max_fog) {
  Scenario s;
  s.label = "test";
  s.servers.push_back(cloud_server(rng->uniform(3e9, 5e9)));
  const int n_fog = static_cast<int>(rng->below(max_fog + 1));
  for (int f = 1; f <= n_fog; ++f) {
    s.servers.push_back(fog_server(f, rng->uniform(1e9, 3e9)));
  }
  for (int n = 0; n < n_users; ++n) {
    User u = make_user(n, rng->uniform(1e3, 4e6), rng->uniform(100.0, 600.0),
                       rng->uniform(1e8, 1e9), rng->uniform(0.0, 1.0),
                       rng->uniform(0.5, 1.0));
    if (rng->uniform() < 0.9) {
      u.links[kCloudServerId] = {rng->uniform(4e6, 7e6), 2.605,
                                 rng->uniform(0.0, 0.4)};
    }
    for (int f = 1; f <= n_fog; ++f) {
      if (rng->uniform() < 0.5) {
        u.links[f] = {rng->uniform(0.7e6, 4e6), rng->uniform(0.0, 1.3), 0.0};
      }
    }
    s.users.push_back(std::move(u));
  }
  return s;
}

/// Random feasible profile over a scenario.
inline OffloadProfile random_profile(SplitMix64* rng, const Scenario& s) {
  OffloadProfile p;
  for (const User& u : s.users) {
    const auto options = feasible_strategies(u);
    p.push_back(options[rng->below(options.size())]);
  }
  return p;
}

}  // namespace fogsim::testutil
