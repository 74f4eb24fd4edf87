#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "fogsim/model.hpp"

namespace fogsim {

struct WeightRange {
  double lo = 0.0;
  double hi = 0.0;  // lo == hi pins the weight to a fixed value
};

/// Knobs for the seeded random scenario generator. Defaults reproduce the
/// reference measurement setting: LTE to the cloud for everyone, up to one
/// WiFi and one Bluetooth fog link per user, 200 ms cloud roundtrip.
struct GeneratorConfig {
  int n_users = 0;
  int n_fog = 0;
  double cloud_rtt_s = 0.2;
  std::uint64_t seed = 0;
  WeightRange weight_energy{0.0, 1.0};  // must stay within [0, 1]
  WeightRange weight_time{0.5, 1.0};    // must stay within (0, 1]
};

struct ScenarioParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Validates the generator knobs; empty result means ok.
std::vector<std::string> validate_config(const GeneratorConfig& cfg);

/// Deterministic in (cfg, cfg.seed). Draw order and PRNG are fixed; see
/// rng.hpp. Throws std::invalid_argument on an invalid config.
Scenario generate(const GeneratorConfig& cfg);

/// Strict JSON codec: unknown fields rejected, every number finite, all
/// model invariants enforced on load. Files store SI units.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace fogsim
