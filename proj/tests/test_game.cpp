#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fogsim/cost.hpp"
#include "fogsim/game.hpp"
#include "fogsim/scenario.hpp"
#include "test_util.hpp"

using namespace fogsim;
using namespace fogsim::testutil;
using doctest::Approx;

namespace {

// Independent evaluation of the potential: sums the per-user weighted QoE
// term by term, once against the actual profile and once with everyone
// else local, then averages the two aggregates.
double potential_oracle(const Scenario& s, const OffloadProfile& p) {
  const OffloadProfile solo = all_local_profile(s);
  double q = 0.0, q_solo = 0.0;
  for (int n = 0; n < s.n_users(); ++n) {
    const double local = local_cost(s.users[n]).weighted_cost;
    if (!p[n].is_local()) {
      const double w = s.users[n].weight_time;
      q += (local - offload_cost(s, n, p[n].server(), p).weighted_cost) / w;
      q_solo +=
          (local - offload_cost(s, n, p[n].server(), solo).weighted_cost) / w;
    }
  }
  return (q + q_solo) / 2.0;
}

Strategy argmax_oracle(const Scenario& s, int n, const OffloadProfile& others) {
  Strategy best = Strategy::local();
  double best_q = 0.0;
  for (Strategy a : feasible_strategies(s.users[n])) {
    const double q = qoe(s, n, a, others);
    if (q > best_q) {
      best_q = q;
      best = a;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("potential of all-Local is zero") {
  SplitMix64 rng(3);
  const Scenario s = random_scenario(&rng, 8, 3);
  CHECK(potential(s, all_local_profile(s)) == 0.0);
}

TEST_CASE("single-user potential collapses to weighted QoE") {
  Scenario s;
  s.servers = {cloud_server(4e9)};
  User u = make_user(0, 8e5, 300.0, 5e8, 0.7, 0.8);
  u.links[0] = {5.85e6, 2.605, 0.2};
  s.users = {u};
  const OffloadProfile p = {Strategy::offload(0)};
  CHECK(potential(s, p) ==
        Approx(qoe(s, 0, p[0], p) / 0.8).epsilon(1e-12));
}

TEST_CASE("potential matches the term-by-term oracle") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const Scenario s = random_scenario(&rng, 3 + rng.below(5), 3);
    const OffloadProfile p = random_profile(&rng, s);
    const double expected = potential_oracle(s, p);
    CHECK(potential(s, p) ==
          Approx(expected).epsilon(1e-9).scale(std::max(1.0, std::fabs(expected))));
  }
}

TEST_CASE("potential identity for unilateral deviations") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const Scenario s = random_scenario(&rng, 2 + rng.below(6), 3);
    OffloadProfile p = random_profile(&rng, s);
    const int n = static_cast<int>(rng.below(s.n_users()));
    const auto options = feasible_strategies(s.users[n]);
    const Strategy a = options[rng.below(options.size())];
    const Strategy b = options[rng.below(options.size())];

    const double dq = qoe(s, n, a, p) - qoe(s, n, b, p);
    OffloadProfile pa = p, pb = p;
    pa[n] = a;
    pb[n] = b;
    const double dp = potential(s, pa) - potential(s, pb);
    const double predicted = s.users[n].weight_time * dp;
    CHECK(dq == Approx(predicted)
                    .epsilon(1e-9)
                    .scale(std::max(1.0, std::fabs(dq))));
  }
}

TEST_CASE("best_response basics") {
  SUBCASE("all offload options losing means Local") {
    Scenario s;
    s.servers = {cloud_server(4e9)};
    User u = make_user(0, 8e5, 300.0, 1e9);
    u.links[0] = {1e5, 50.0, 2.0};
    s.users = {u};
    CHECK(best_response(s, 0, all_local_profile(s)).is_local());
  }

  SUBCASE("isolated user stays local") {
    Scenario s;
    s.servers = {cloud_server(4e9)};
    s.users = {make_user(0, 8e5, 300.0, 1e9)};
    CHECK(best_response(s, 0, all_local_profile(s)).is_local());
  }
}

TEST_CASE("best_response matches the exhaustive argmax oracle") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const Scenario s = random_scenario(&rng, 2 + rng.below(5), 3);
    const OffloadProfile p = random_profile(&rng, s);
    const int n = static_cast<int>(rng.below(s.n_users()));
    const Strategy br = best_response(s, n, p);
    CHECK(qoe(s, n, br, p) == qoe(s, n, argmax_oracle(s, n, p), p));
    // Returned value dominates every feasible alternative exactly.
    for (Strategy a : feasible_strategies(s.users[n])) {
      CHECK(qoe(s, n, br, p) >= qoe(s, n, a, p));
    }
  }
}

TEST_CASE("single user converges to its standalone argmax in <= 2 passes") {
  Scenario s;
  s.servers = {cloud_server(4e9)};
  User u = make_user(0, 4e6, 500.0, 1e8);
  u.links[0] = {6e6, 2.605, 0.2};
  s.users = {u};

  const EquilibriumReport r =
      run_best_response(s, DynamicsConfig{}, all_local_profile(s));
  CHECK(r.converged);
  CHECK(r.rounds <= 2);
  CHECK(r.profile[0] == argmax_oracle(s, 0, all_local_profile(s)));
}

TEST_CASE("best-response dynamics reach a Nash equilibrium") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig cfg;
    cfg.n_users = 20;
    cfg.n_fog = 5;
    cfg.seed = seed;
    const Scenario s = generate(cfg);
    const EquilibriumReport r =
        run_best_response(s, DynamicsConfig{}, all_local_profile(s));
    REQUIRE(r.converged);
    CHECK(is_nash(s, r.profile));
    for (std::size_t i = 1; i < r.potential_trace.size(); ++i) {
      CHECK(r.potential_trace[i] > r.potential_trace[i - 1]);
    }
  }
}

TEST_CASE("shuffled visit order still converges to a Nash equilibrium") {
  GeneratorConfig cfg;
  cfg.n_users = 20;
  cfg.n_fog = 5;
  cfg.seed = 99;
  const Scenario s = generate(cfg);
  DynamicsConfig dyn;
  dyn.order = UpdateOrder::SeededShuffle;
  dyn.shuffle_seed = 12345;
  const EquilibriumReport r = run_best_response(s, dyn, all_local_profile(s));
  CHECK(r.converged);
  CHECK(is_nash(s, r.profile));
}

TEST_CASE("epsilon dynamics") {
  GeneratorConfig cfg;
  cfg.n_users = 15;
  cfg.n_fog = 4;
  cfg.seed = 7;
  const Scenario s = generate(cfg);

  SUBCASE("epsilon <= 0 is rejected") {
    CHECK_THROWS_AS(run_epsilon_better_response(s, DynamicsConfig{},
                                                all_local_profile(s)),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_best_response(s, DynamicsConfig{0.1, 0,
                                                        UpdateOrder::ByUserId, 0},
                                      all_local_profile(s)),
                    std::invalid_argument);
  }

  SUBCASE("huge epsilon leaves all-Local untouched") {
    DynamicsConfig dyn;
    dyn.epsilon = 1e12;
    const EquilibriumReport r =
        run_epsilon_better_response(s, dyn, all_local_profile(s));
    CHECK(r.converged);
    CHECK(r.updates == 0);
    CHECK(r.profile == all_local_profile(s));
  }

  SUBCASE("result is an epsilon equilibrium and respects the update bound") {
    for (double eps : {0.01, 0.1, 1.0}) {
      DynamicsConfig dyn;
      dyn.epsilon = eps;
      const EquilibriumReport r =
          run_epsilon_better_response(s, dyn, all_local_profile(s));
      REQUIRE(r.converged);
      CHECK(is_epsilon_nash(s, r.profile, eps));
      CHECK(static_cast<double>(r.updates) <=
            better_response_update_bound(s, eps));
      // Each adopted update lifts the potential by more than eps / max weight.
      double max_w = 0.0;
      for (const User& u : s.users) max_w = std::max(max_w, u.weight_time);
      for (std::size_t i = 1; i < r.potential_trace.size(); ++i) {
        CHECK(r.potential_trace[i] - r.potential_trace[i - 1] > eps / max_w);
      }
    }
  }
}

TEST_CASE("is_nash and is_epsilon_nash definitions") {
  SplitMix64 rng(59);
  const Scenario s = random_scenario(&rng, 5, 2);

  SUBCASE("negative-qoe holder is never at equilibrium") {
    Scenario s2;
    s2.servers = {cloud_server(4e9)};
    User u = make_user(0, 8e5, 300.0, 1e9);
    u.links[0] = {1e5, 50.0, 2.0};
    s2.users = {u};
    const OffloadProfile p = {Strategy::offload(0)};
    CHECK(!is_nash(s2, p));
  }

  SUBCASE("a NE is an epsilon-NE for every epsilon") {
    const EquilibriumReport r =
        run_best_response(s, DynamicsConfig{}, all_local_profile(s));
    REQUIRE(r.converged);
    for (double eps : {0.0, 0.01, 1.0, 100.0}) {
      CHECK(is_epsilon_nash(s, r.profile, eps));
    }
  }

  SUBCASE("epsilon zero coincides with is_nash") {
    for (int trial = 0; trial < 50; ++trial) {
      SplitMix64 trial_rng(1000 + trial);
      const Scenario st = random_scenario(&trial_rng, 4, 2);
      const OffloadProfile p = random_profile(&trial_rng, st);
      CHECK(is_epsilon_nash(st, p, 0.0) == is_nash(st, p));
    }
  }
}

TEST_CASE("identical inputs give bit-identical reports") {
  GeneratorConfig cfg;
  cfg.n_users = 25;
  cfg.n_fog = 6;
  cfg.seed = 4;
  const Scenario s = generate(cfg);
  DynamicsConfig dyn;
  dyn.order = UpdateOrder::SeededShuffle;
  dyn.shuffle_seed = 77;

  const EquilibriumReport a = run_best_response(s, dyn, all_local_profile(s));
  const EquilibriumReport b = run_best_response(s, dyn, all_local_profile(s));
  CHECK(a.profile == b.profile);
  CHECK(a.updates == b.updates);
  CHECK(a.rounds == b.rounds);
  CHECK(a.potential_trace == b.potential_trace);
  CHECK(a.per_user_qoe == b.per_user_qoe);
  CHECK(a.social_cost == b.social_cost);
}
