#include "fogsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "fogsim/rng.hpp"
#include "json.hpp"

namespace fogsim {

namespace {

// Reference measurement constants (SI units).
constexpr double kKappa = 0.33;
constexpr double kPhi = 3.0;
constexpr double kVarrho = 0.1;
constexpr double kCpuHzLo = 1e8, kCpuHzHi = 1e9;
constexpr double kTaskBitsLo = 800.0, kTaskBitsHi = 4e6;  // 100 B .. 0.5 MB
constexpr double kDensityLo = 100.0, kDensityHi = 600.0;
constexpr double kCloudCapacityHz = 4e9;
constexpr double kFogCapacityHzLo = 2e9, kFogCapacityHzHi = 3e9;
constexpr double kLteRateLo = 4.85e6, kLteRateHi = 6.85e6;
constexpr double kLteEnergyJPerS = 2.605;
constexpr double kWifiRateLo = 2.01e6, kWifiRateHi = 4.01e6;
constexpr double kWifiEnergyJPerS = 1.22478;
constexpr double kBtRateLo = 0.7e6, kBtRateHi = 2.1e6;
constexpr double kBtEnergyJPerS = 0.084;

}  // namespace

std::vector<std::string> validate_config(const GeneratorConfig& cfg) {
  std::vector<std::string> violations;
  if (cfg.n_users < 1) violations.push_back("n_users must be >= 1");
  if (cfg.n_fog < 0) violations.push_back("n_fog must be >= 0");
  if (!(std::isfinite(cfg.cloud_rtt_s) && cfg.cloud_rtt_s >= 0.0)) {
    violations.push_back("cloud_rtt_s must be >= 0");
  }
  const WeightRange& e = cfg.weight_energy;
  if (!(e.lo <= e.hi && e.lo >= 0.0 && e.hi <= 1.0)) {
    violations.push_back("weight_energy range must satisfy 0 <= lo <= hi <= 1");
  }
  const WeightRange& t = cfg.weight_time;
  if (!(t.lo <= t.hi && t.lo > 0.0 && t.hi <= 1.0)) {
    violations.push_back("weight_time range must satisfy 0 < lo <= hi <= 1");
  }
  return violations;
}

Scenario generate(const GeneratorConfig& cfg) {
  const auto violations = validate_config(cfg);
  if (!violations.empty()) throw std::invalid_argument(violations.front());

  Scenario s;
  s.label = "generated seed=" + std::to_string(cfg.seed) +
            " n=" + std::to_string(cfg.n_users) +
            " s=" + std::to_string(cfg.n_fog);

  // Substream 0: fog capacities, ascending id.
  s.servers.push_back({kCloudServerId, ServerKind::Cloud, kCloudCapacityHz});
  SplitMix64 server_rng = SplitMix64::substream(cfg.seed, 0);
  for (int f = 1; f <= cfg.n_fog; ++f) {
    s.servers.push_back(
        {f, ServerKind::Fog,
         server_rng.uniform(kFogCapacityHzLo, kFogCapacityHzHi)});
  }

  // Substream n+1: user n. Fixed draw order: cpu, task size, density,
  // LTE rate, [WiFi fog index, WiFi rate], [Bluetooth fog index, rate],
  // weight_energy, weight_time.
  for (int n = 0; n < cfg.n_users; ++n) {
    SplitMix64 rng = SplitMix64::substream(cfg.seed, n + 1);
    User u;
    u.id = n;
    u.device = {rng.uniform(kCpuHzLo, kCpuHzHi), kKappa, kPhi, kVarrho};
    u.task = {rng.uniform(kTaskBitsLo, kTaskBitsHi),
              rng.uniform(kDensityLo, kDensityHi)};
    u.links[kCloudServerId] = {rng.uniform(kLteRateLo, kLteRateHi),
                               kLteEnergyJPerS, cfg.cloud_rtt_s};
    if (cfg.n_fog >= 1) {
      const int wifi_fog = 1 + static_cast<int>(rng.below(cfg.n_fog));
      u.links[wifi_fog] = {rng.uniform(kWifiRateLo, kWifiRateHi),
                           kWifiEnergyJPerS, 0.0};
      if (cfg.n_fog >= 2) {
        // Distinct second fog node.
        int bt_fog = 1 + static_cast<int>(rng.below(cfg.n_fog - 1));
        if (bt_fog >= wifi_fog) ++bt_fog;
        u.links[bt_fog] = {rng.uniform(kBtRateLo, kBtRateHi), kBtEnergyJPerS,
                           0.0};
      }
    }
    u.weight_energy = rng.uniform(cfg.weight_energy.lo, cfg.weight_energy.hi);
    u.weight_time = rng.uniform(cfg.weight_time.lo, cfg.weight_time.hi);
    s.users.push_back(std::move(u));
  }
  return s;
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& why) {
  throw ScenarioParseError(path + ": " + why);
}

const json& expect_object(const json& j, const std::string& path,
                          std::initializer_list<const char*> allowed) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) parse_fail(path, "unknown field \"" + key + "\"");
  }
  for (const char* a : allowed) {
    if (!j.contains(a)) parse_fail(path, std::string("missing field \"") + a + "\"");
  }
  return j;
}

double expect_number(const json& j, const std::string& path, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) parse_fail(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(path + "." + key, "must be finite");
  return x;
}

int expect_int(const json& j, const std::string& path, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) parse_fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

json server_to_json(const Server& sv) {
  return {{"id", sv.id},
          {"kind", sv.kind == ServerKind::Cloud ? "cloud" : "fog"},
          {"capacity_hz", sv.capacity_hz}};
}

json user_to_json(const User& u) {
  json links = json::array();
  for (const auto& [sid, link] : u.links) {
    links.push_back({{"server", sid},
                     {"rate_bps", link.rate_bps},
                     {"energy_j_per_s", link.energy_j_per_s},
                     {"rtt_s", link.rtt_s}});
  }
  return {{"id", u.id},
          {"task",
           {{"size_bits", u.task.size_bits},
            {"density_cycles_per_bit", u.task.density_cycles_per_bit}}},
          {"device",
           {{"cpu_hz", u.device.cpu_hz},
            {"kappa", u.device.kappa},
            {"phi", u.device.phi},
            {"varrho", u.device.varrho}}},
          {"weight_energy", u.weight_energy},
          {"weight_time", u.weight_time},
          {"links", links}};
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["label"] = s.label;
  j["servers"] = json::array();
  for (const Server& sv : s.servers) j["servers"].push_back(server_to_json(sv));
  j["users"] = json::array();
  for (const User& u : s.users) j["users"].push_back(user_to_json(u));
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    // Covers syntax errors and out-of-range literals (e.g. 1e99999).
    throw ScenarioParseError(std::string("malformed JSON: ") + e.what());
  }
  expect_object(j, "$", {"label", "servers", "users"});
  Scenario s;
  if (!j.at("label").is_string()) parse_fail("$.label", "expected a string");
  s.label = j.at("label").get<std::string>();

  if (!j.at("servers").is_array()) parse_fail("$.servers", "expected an array");
  for (std::size_t i = 0; i < j.at("servers").size(); ++i) {
    const std::string path = "servers[" + std::to_string(i) + "]";
    const json& sj = expect_object(j.at("servers")[i], path,
                                   {"id", "kind", "capacity_hz"});
    Server sv;
    sv.id = expect_int(sj, path, "id");
    const json& kind = sj.at("kind");
    if (kind == "cloud") {
      sv.kind = ServerKind::Cloud;
    } else if (kind == "fog") {
      sv.kind = ServerKind::Fog;
    } else {
      parse_fail(path + ".kind", "expected \"cloud\" or \"fog\"");
    }
    sv.capacity_hz = expect_number(sj, path, "capacity_hz");
    s.servers.push_back(sv);
  }

  if (!j.at("users").is_array()) parse_fail("$.users", "expected an array");
  for (std::size_t i = 0; i < j.at("users").size(); ++i) {
    const std::string path = "users[" + std::to_string(i) + "]";
    const json& uj = expect_object(
        j.at("users")[i], path,
        {"id", "task", "device", "weight_energy", "weight_time", "links"});
    User u;
    u.id = expect_int(uj, path, "id");
    const json& tj = expect_object(uj.at("task"), path + ".task",
                                   {"size_bits", "density_cycles_per_bit"});
    u.task.size_bits = expect_number(tj, path + ".task", "size_bits");
    u.task.density_cycles_per_bit =
        expect_number(tj, path + ".task", "density_cycles_per_bit");
    const json& dj = expect_object(uj.at("device"), path + ".device",
                                   {"cpu_hz", "kappa", "phi", "varrho"});
    u.device.cpu_hz = expect_number(dj, path + ".device", "cpu_hz");
    u.device.kappa = expect_number(dj, path + ".device", "kappa");
    u.device.phi = expect_number(dj, path + ".device", "phi");
    u.device.varrho = expect_number(dj, path + ".device", "varrho");
    u.weight_energy = expect_number(uj, path, "weight_energy");
    u.weight_time = expect_number(uj, path, "weight_time");

    if (!uj.at("links").is_array()) parse_fail(path + ".links", "expected an array");
    for (std::size_t k = 0; k < uj.at("links").size(); ++k) {
      const std::string lpath = path + ".links[" + std::to_string(k) + "]";
      const json& lj =
          expect_object(uj.at("links")[k], lpath,
                        {"server", "rate_bps", "energy_j_per_s", "rtt_s"});
      const int sid = expect_int(lj, lpath, "server");
      if (u.links.count(sid)) parse_fail(lpath + ".server", "duplicate link");
      Link link;
      link.rate_bps = expect_number(lj, lpath, "rate_bps");
      link.energy_j_per_s = expect_number(lj, lpath, "energy_j_per_s");
      link.rtt_s = expect_number(lj, lpath, "rtt_s");
      if (link.rate_bps <= 0.0) parse_fail(lpath + ".rate_bps", "must be > 0");
      u.links[sid] = link;
    }
    s.users.push_back(std::move(u));
  }

  const auto violations = validate_scenario(s);
  if (!violations.empty()) {
    throw ScenarioParseError("invalid scenario: " + violations.front());
  }
  return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << scenario_to_json(s);
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return scenario_from_json(text);
}

}  // namespace fogsim
