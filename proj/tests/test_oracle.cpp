#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fogsim/cost.hpp"
#include "fogsim/game.hpp"
#include "fogsim/oracle.hpp"
#include "fogsim/scenario.hpp"
#include "test_util.hpp"

using namespace fogsim;
using namespace fogsim::testutil;
using doctest::Approx;

namespace {

Scenario small_generated(std::uint64_t seed, int n_users = 3, int n_fog = 2) {
  GeneratorConfig cfg;
  cfg.n_users = n_users;
  cfg.n_fog = n_fog;
  cfg.seed = seed;
  return generate(cfg);
}

}  // namespace

TEST_CASE("profile enumeration counts the product space") {
  Scenario s;
  s.servers = {cloud_server(4e9)};
  for (int n = 0; n < 2; ++n) {
    User u = make_user(n, 1e6, 300.0, 5e8);
    u.links[0] = {5e6, 2.605, 0.2};
    s.users.push_back(u);
  }
  CHECK(profile_space_size(s) == 4);
  int count = 0;
  for_each_profile(s, 10, [&](const OffloadProfile&) { ++count; });
  CHECK(count == 4);

  SUBCASE("three users with two links each give 27 profiles") {
    Scenario s3 = s;
    s3.servers.push_back(fog_server(1, 2e9));
    s3.users.push_back(make_user(2, 1e6, 300.0, 5e8));
    s3.users[2].links[0] = {5e6, 2.605, 0.2};
    for (User& u : s3.users) u.links[1] = {3e6, 1.22478, 0.0};
    CHECK(profile_space_size(s3) == 27);
    count = 0;
    for_each_profile(s3, 100, [&](const OffloadProfile&) { ++count; });
    CHECK(count == 27);
  }
}

TEST_CASE("enumeration cap guard reports the product size") {
  Scenario s;
  s.servers = {cloud_server(4e9), fog_server(1, 2e9), fog_server(2, 2e9)};
  for (int n = 0; n < 3; ++n) {
    User u = make_user(n, 1e6, 300.0, 5e8);
    u.links[0] = {5e6, 2.605, 0.2};
    u.links[1] = {3e6, 1.22478, 0.0};
    u.links[2] = {2e6, 0.084, 0.0};
    s.users.push_back(u);
  }
  // 4^3 = 64 exceeds a cap of 10.
  CHECK_THROWS_WITH_AS(for_each_profile(s, 10, [](const OffloadProfile&) {}),
                       "strategy-space size 64 exceeds the enumeration cap",
                       EnumerationCapExceeded);
  try {
    for_each_profile(s, 10, [](const OffloadProfile&) {});
  } catch (const EnumerationCapExceeded& e) {
    CHECK(e.product_size == 64);
  }
}

TEST_CASE("single-user equilibria are exactly the argmax strategies") {
  Scenario s;
  s.servers = {cloud_server(4e9)};
  User u = make_user(0, 4e6, 500.0, 1e8);
  u.links[0] = {6e6, 2.605, 0.2};
  s.users = {u};

  const auto equilibria = enumerate_equilibria(s);
  const OffloadProfile p0 = all_local_profile(s);
  double best = 0.0;
  for (Strategy a : feasible_strategies(s.users[0])) {
    best = std::max(best, qoe(s, 0, a, p0));
  }
  for (const auto& e : equilibria) CHECK(qoe(s, 0, e[0], p0) == best);
  int argmax_count = 0;
  for (Strategy a : feasible_strategies(s.users[0])) {
    if (qoe(s, 0, a, p0) == best) ++argmax_count;
  }
  CHECK(static_cast<int>(equilibria.size()) == argmax_count);
}

TEST_CASE("symmetric two-user one-fog congestion game") {
  // Both users fit profitably alone on the fog node; sharing it is still
  // better than local. Hand enumeration of the 2x2 payoff table.
  Scenario s;
  s.servers = {cloud_server(4e9), fog_server(1, 2e9)};
  for (int n = 0; n < 2; ++n) {
    User u = make_user(n, 1e6, 400.0, 2e8, 0.0, 1.0);  // local: 2.0 s
    u.links[1] = {4e6, 1.22478, 0.0};  // transmit 0.25 s, compute 0.2 or 0.4 s
    s.users.push_back(u);
  }
  const auto equilibria = enumerate_equilibria(s);
  // qoe(fog alone) = 2.0 - 0.45 > 0, qoe(fog shared) = 2.0 - 0.65 > 0, so
  // offloading dominates local and (fog, fog) is the unique NE.
  REQUIRE(equilibria.size() == 1);
  CHECK(equilibria[0] ==
        OffloadProfile{Strategy::offload(1), Strategy::offload(1)});
}

TEST_CASE("best-response fixed point is in the enumerated NE set") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Scenario s = small_generated(seed, 4, 2);
    const auto equilibria = enumerate_equilibria(s);
    REQUIRE(!equilibria.empty());
    const EquilibriumReport r =
        run_best_response(s, DynamicsConfig{}, all_local_profile(s));
    REQUIRE(r.converged);
    CHECK(std::find(equilibria.begin(), equilibria.end(), r.profile) !=
          equilibria.end());
  }
}

TEST_CASE("social optimum") {
  SUBCASE("single user takes its min-cost strategy") {
    Scenario s;
    s.servers = {cloud_server(4e9)};
    User u = make_user(0, 4e6, 500.0, 1e8);
    u.links[0] = {6e6, 2.605, 0.2};
    s.users = {u};
    const OptimumResult opt = social_optimum(s);
    CHECK(opt.exact);
    const OffloadProfile p0 = all_local_profile(s);
    double expected = local_cost(s.users[0]).weighted_cost;
    for (Strategy a : feasible_strategies(s.users[0])) {
      expected = std::min(expected, user_cost(s, 0, a, p0));
    }
    CHECK(opt.cost == Approx(expected).epsilon(1e-12));
  }

  SUBCASE("all offloading unprofitable gives all-Local") {
    Scenario s;
    s.servers = {cloud_server(4e9)};
    for (int n = 0; n < 3; ++n) {
      User u = make_user(n, 8e5, 300.0, 1e9);
      u.links[0] = {1e5, 50.0, 2.0};
      s.users.push_back(u);
    }
    const OptimumResult opt = social_optimum(s);
    CHECK(opt.exact);
    CHECK(opt.profile == all_local_profile(s));
    double expected = 0.0;
    for (const User& u : s.users) expected += local_cost(u).weighted_cost;
    CHECK(opt.cost == Approx(expected).epsilon(1e-12));
  }

  SUBCASE("exhaustive minimum is never above the heuristic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Scenario s = small_generated(seed, 4, 2);
      const OptimumResult exact = social_optimum(s);
      const OptimumResult heuristic = social_optimum(s, /*cap=*/1);
      CHECK(exact.exact);
      CHECK(!heuristic.exact);
      CHECK(exact.cost <=
            heuristic.cost + 1e-9 * std::max(1.0, heuristic.cost));
    }
  }
}

TEST_CASE("poa on degenerate instances") {
  SUBCASE("single user") {
    Scenario s;
    s.servers = {cloud_server(4e9)};
    User u = make_user(0, 4e6, 500.0, 1e8);
    u.links[0] = {6e6, 2.605, 0.2};
    s.users = {u};
    const PoAReport r = poa(s);
    CHECK(r.exact);
    CHECK(r.poa == Approx(1.0).epsilon(1e-12));
    CHECK(r.bound >= 1.0);
  }

  SUBCASE("no links forces all-Local and poa = 1") {
    Scenario s;
    s.servers = {cloud_server(4e9)};
    for (int n = 0; n < 3; ++n) s.users.push_back(make_user(n, 1e6, 300.0, 5e8));
    const PoAReport r = poa(s);
    CHECK(r.exact);
    CHECK(r.poa == Approx(1.0).epsilon(1e-12));
    CHECK(r.bound_occupancy >= 1.0);
    CHECK(r.bound_ratio >= 1.0);
  }
}

TEST_CASE("poa bound and ordering invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Scenario s = small_generated(seed, 4, 2);
    const PoAReport r = poa(s);
    REQUIRE(r.exact);
    CHECK(r.poa >= 1.0 - 1e-12);
    CHECK(r.poa <= r.bound + 1e-9);
    CHECK(r.worst_ne_cost >= r.best_ne_cost);
    CHECK(r.best_ne_cost >= r.optimal_cost - 1e-9 * r.optimal_cost);

    // Worst NE never exceeds the all-Local social cost.
    double all_local = 0.0;
    for (const User& u : s.users) all_local += local_cost(u).weighted_cost;
    CHECK(r.worst_ne_cost <= all_local + 1e-9 * all_local);
  }
}
