// fogsim command-line tool: scenario generation, equilibrium dynamics,
// equilibrium verification, PoA analysis, and metric sweeps.
//
// Exit codes: 0 success, 1 verification negative, 2 usage/domain error,
// 3 I/O error, 4 non-convergence, 5 enumeration cap exceeded.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fogsim/cost.hpp"
#include "fogsim/experiments.hpp"
#include "fogsim/game.hpp"
#include "fogsim/model.hpp"
#include "fogsim/oracle.hpp"
#include "fogsim/scenario.hpp"
#include "json.hpp"

namespace {

using fogsim::DynamicsConfig;
using fogsim::EquilibriumReport;
using fogsim::GeneratorConfig;
using fogsim::OffloadProfile;
using fogsim::Scenario;
using fogsim::Strategy;
using nlohmann::json;

struct CliError {
  int code;
  std::string message;
};

// Write-temp-then-rename so reruns either fully replace the file or leave
// the previous version intact.
void atomic_write(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text).flush()) {
      throw CliError{3, "cannot write " + path.string()};
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CliError{3, "cannot write " + path.string() + ": " + ec.message()};
}

Scenario load_scenario_or_die(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw CliError{3, "no such file: " + path};
  }
  try {
    return fogsim::load_scenario(path);
  } catch (const fogsim::ScenarioParseError& e) {
    throw CliError{2, std::string("scenario: ") + e.what()};
  }
}

// "LO:HI" or a single fixed value.
fogsim::WeightRange parse_weight_range(const std::string& text,
                                       const std::string& flag) {
  try {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      const double v = std::stod(text);
      return {v, v};
    }
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CliError{2, flag + ": expected FIX or LO:HI, got \"" + text + "\""};
  }
}

json strategy_to_json(Strategy s) {
  if (s.is_local()) return "local";
  return s.server();
}

json report_to_json(const EquilibriumReport& r) {
  json j;
  j["converged"] = r.converged;
  j["updates"] = r.updates;
  j["rounds"] = r.rounds;
  j["profile"] = json::array();
  for (Strategy s : r.profile) j["profile"].push_back(strategy_to_json(s));
  j["potential_trace"] = r.potential_trace;
  j["per_user_qoe"] = r.per_user_qoe;
  j["social_cost"] = r.social_cost;
  return j;
}

// Accepts any JSON object with a "profile" array of "local" / server id
// entries, so a run report can be fed straight back to verify.
OffloadProfile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{3, "cannot open " + path};
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CliError{2, path + ": malformed JSON: " + e.what()};
  }
  if (!j.is_object() || !j.contains("profile") || !j["profile"].is_array()) {
    throw CliError{2, path + ": expected an object with a \"profile\" array"};
  }
  OffloadProfile p;
  for (const json& entry : j["profile"]) {
    if (entry == "local") {
      p.push_back(Strategy::local());
    } else if (entry.is_number_integer()) {
      p.push_back(Strategy::offload(entry.get<int>()));
    } else {
      throw CliError{2, path + ": profile entries must be \"local\" or a server id"};
    }
  }
  return p;
}

json poa_report_to_json(const fogsim::PoAReport& r) {
  return {{"worst_ne_cost", r.worst_ne_cost}, {"best_ne_cost", r.best_ne_cost},
          {"optimal_cost", r.optimal_cost},   {"poa", r.poa},
          {"bound_occupancy", r.bound_occupancy},
          {"bound_ratio", r.bound_ratio},     {"bound", r.bound},
          {"exact", r.exact}};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Fog-cloud computation offloading game simulator"};
  app.require_subcommand(1);

  // --- generate ---
  auto* gen = app.add_subcommand("generate", "Generate a seeded scenario");
  int g_users = 0, g_fog = 0;
  double g_rtt = 0.2;
  std::uint64_t g_seed = 0;
  std::string g_lambda_e, g_lambda_t, g_out;
  gen->add_option("--users", g_users, "Number of IoT users")->required();
  gen->add_option("--fog", g_fog, "Number of fog nodes")->required();
  gen->add_option("--cloud-rtt", g_rtt, "Cloud roundtrip delay in seconds");
  gen->add_option("--seed", g_seed, "Generator seed")->required();
  gen->add_option("--lambda-e", g_lambda_e, "Energy weight: FIX or LO:HI");
  gen->add_option("--lambda-t", g_lambda_t, "Time weight: FIX or LO:HI");
  gen->add_option("--out", g_out, "Output scenario path")->required();

  // --- run ---
  auto* run = app.add_subcommand("run", "Run equilibrium dynamics");
  std::string r_scenario, r_algo = "br", r_init = "local", r_order = "byid",
              r_out;
  double r_epsilon = 0.0;
  run->add_option("--scenario", r_scenario, "Scenario path")->required();
  run->add_option("--algo", r_algo, "br | eps-br")
      ->check(CLI::IsMember({"br", "eps-br"}));
  run->add_option("--epsilon", r_epsilon, "Epsilon for eps-br");
  run->add_option("--init", r_init, "local | profile file");
  run->add_option("--order", r_order, "byid | shuffle:SEED");
  run->add_option("--out", r_out, "Output report path")->required();

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "Check a profile for (eps-)NE");
  std::string v_scenario, v_profile;
  double v_epsilon = 0.0;
  verify->add_option("--scenario", v_scenario, "Scenario path")->required();
  verify->add_option("--profile", v_profile, "Profile or report path")->required();
  verify->add_option("--epsilon", v_epsilon, "Tolerated deviation gain");

  // --- analyze ---
  auto* analyze = app.add_subcommand("analyze", "PoA report");
  std::string a_scenario, a_out;
  std::uint64_t a_cap = fogsim::kDefaultEnumerationCap;
  bool a_heuristic = false;
  analyze->add_option("--scenario", a_scenario, "Scenario path")->required();
  analyze->add_option("--cap", a_cap, "Enumeration cap");
  analyze->add_flag("--allow-heuristic", a_heuristic,
                    "Fall back to heuristic optimum beyond the cap");
  analyze->add_option("--out", a_out, "Also write the report here");

  // --- sweep ---
  auto* sw = app.add_subcommand("sweep", "Replicated metric sweep");
  std::string s_axis, s_values, s_lambda_e, s_lambda_t, s_preset, s_csv, s_json;
  int s_users = 100, s_fog = 0, s_reps = 20;
  double s_rtt = 0.2;
  std::uint64_t s_seed = 0;
  sw->add_option("--axis", s_axis, "n | s | rtt")
      ->required()
      ->check(CLI::IsMember({"n", "s", "rtt"}));
  sw->add_option("--values", s_values, "Comma-separated axis values")->required();
  sw->add_option("--reps", s_reps, "Replications per point");
  sw->add_option("--seed", s_seed, "Base seed");
  sw->add_option("--users", s_users, "Users (when not the axis)");
  sw->add_option("--fog", s_fog, "Fog nodes (when not the axis)");
  sw->add_option("--cloud-rtt", s_rtt, "Cloud rtt (when not the axis)");
  sw->add_option("--lambda-e", s_lambda_e, "Energy weight: FIX or LO:HI");
  sw->add_option("--lambda-t", s_lambda_t, "Time weight: FIX or LO:HI");
  sw->add_option("--preset", s_preset, "delay-sensitive pins lambdas to 0 / 1")
      ->check(CLI::IsMember({"delay-sensitive"}));
  sw->add_option("--out-csv", s_csv, "Output CSV path")->required();
  sw->add_option("--out-json", s_json, "Output JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*gen) {
    GeneratorConfig cfg;
    cfg.n_users = g_users;
    cfg.n_fog = g_fog;
    cfg.cloud_rtt_s = g_rtt;
    cfg.seed = g_seed;
    if (!g_lambda_e.empty()) {
      cfg.weight_energy = parse_weight_range(g_lambda_e, "--lambda-e");
    }
    if (!g_lambda_t.empty()) {
      cfg.weight_time = parse_weight_range(g_lambda_t, "--lambda-t");
    }
    const auto violations = fogsim::validate_config(cfg);
    if (!violations.empty()) throw CliError{2, violations.front()};
    atomic_write(g_out, fogsim::scenario_to_json(fogsim::generate(cfg)));
    return 0;
  }

  if (*run) {
    const Scenario s = load_scenario_or_die(r_scenario);
    DynamicsConfig dyn;
    if (r_order == "byid") {
      dyn.order = fogsim::UpdateOrder::ByUserId;
    } else if (r_order.rfind("shuffle:", 0) == 0) {
      dyn.order = fogsim::UpdateOrder::SeededShuffle;
      try {
        dyn.shuffle_seed = std::stoull(r_order.substr(8));
      } catch (const std::exception&) {
        throw CliError{2, "--order shuffle:SEED needs an integer seed"};
      }
    } else {
      throw CliError{2, "--order must be byid or shuffle:SEED"};
    }
    OffloadProfile init = r_init == "local" ? fogsim::all_local_profile(s)
                                            : load_profile(r_init);
    if (!fogsim::profile_feasible(s, init)) {
      throw CliError{2, "--init profile is infeasible for this scenario"};
    }
    EquilibriumReport report;
    if (r_algo == "br") {
      report = fogsim::run_best_response(s, dyn, init);
    } else {
      if (!(r_epsilon > 0.0)) {
        throw CliError{2, "--algo eps-br requires a positive --epsilon"};
      }
      dyn.epsilon = r_epsilon;
      report = fogsim::run_epsilon_better_response(s, dyn, init);
    }
    atomic_write(r_out, report_to_json(report).dump(2) + "\n");
    if (!report.converged) {
      std::cerr << "dynamics exhausted max_rounds without converging\n";
      return 4;
    }
    return 0;
  }

  if (*verify) {
    const Scenario s = load_scenario_or_die(v_scenario);
    const OffloadProfile p = load_profile(v_profile);
    if (!fogsim::profile_feasible(s, p)) {
      throw CliError{2, "profile is infeasible for this scenario"};
    }
    for (int n = 0; n < s.n_users(); ++n) {
      const double current = fogsim::qoe(s, n, p[n], p);
      const Strategy br = fogsim::best_response(s, n, p);
      const double gain = fogsim::qoe(s, n, br, p) - current;
      if (gain > v_epsilon) {
        std::cout << "user " << n << " can gain " << gain
                  << " by switching to "
                  << (br.is_local() ? std::string("local")
                                    : "server " + std::to_string(br.server()))
                  << "\n";
        return 1;
      }
    }
    std::cout << "equilibrium verified (epsilon=" << v_epsilon << ")\n";
    return 0;
  }

  if (*analyze) {
    const Scenario s = load_scenario_or_die(a_scenario);
    if (!a_heuristic && fogsim::profile_space_size(s) > a_cap) {
      std::cerr << "strategy-space size " << fogsim::profile_space_size(s)
                << " exceeds cap " << a_cap
                << "; pass --allow-heuristic for an inexact report\n";
      return 5;
    }
    const fogsim::PoAReport report = fogsim::poa(s, a_cap);
    const std::string text = poa_report_to_json(report).dump(2) + "\n";
    std::cout << text;
    if (!a_out.empty()) atomic_write(a_out, text);
    return 0;
  }

  if (*sw) {
    fogsim::SweepAxis axis = s_axis == "n"   ? fogsim::SweepAxis::Users
                             : s_axis == "s" ? fogsim::SweepAxis::FogNodes
                                             : fogsim::SweepAxis::CloudRtt;
    std::vector<double> values;
    std::stringstream ss(s_values);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw CliError{2, "--values: not a number: \"" + item + "\""};
      }
    }
    if (values.empty()) throw CliError{2, "--values must be nonempty"};
    if (s_reps < 1) throw CliError{2, "--reps must be >= 1"};

    GeneratorConfig cfg;
    cfg.n_users = s_users;
    cfg.n_fog = s_fog;
    cfg.cloud_rtt_s = s_rtt;
    if (!s_lambda_e.empty()) {
      cfg.weight_energy = parse_weight_range(s_lambda_e, "--lambda-e");
    }
    if (!s_lambda_t.empty()) {
      cfg.weight_time = parse_weight_range(s_lambda_t, "--lambda-t");
    }
    if (s_preset == "delay-sensitive") {
      cfg.weight_energy = {0.0, 0.0};
      cfg.weight_time = {1.0, 1.0};
    }
    const auto violations = fogsim::validate_config(
        [&] {  // axis field gets overwritten; make the template valid
          GeneratorConfig probe = cfg;
          if (axis == fogsim::SweepAxis::Users) probe.n_users = 1;
          return probe;
        }());
    if (!violations.empty()) throw CliError{2, violations.front()};

    const fogsim::SweepResult result =
        fogsim::sweep(axis, values, cfg, DynamicsConfig{}, s_reps, s_seed);
    atomic_write(s_csv, fogsim::sweep_to_csv(result));
    atomic_write(s_json, fogsim::sweep_to_json_text(result));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
