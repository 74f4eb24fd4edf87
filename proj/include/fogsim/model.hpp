#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogsim {

/// One computation job: size in bits and processing density in cycles/bit.
struct Task {
  double size_bits = 0.0;
  double density_cycles_per_bit = 0.0;

  double workload_cycles() const { return size_bits * density_cycles_per_bit; }
};

/// IoT device CPU parameters. The energy coefficient is
/// alpha = kappa * f_ghz^phi + varrho with the clock expressed in GHz.
struct Device {
  double cpu_hz = 0.0;
  double kappa = 0.0;
  double phi = 0.0;
  double varrho = 0.0;
};

/// Wireless link from a user to one server. All quantities SI.
struct Link {
  double rate_bps = 0.0;
  double energy_j_per_s = 0.0;
  double rtt_s = 0.0;
};

enum class ServerKind { Cloud, Fog };

struct Server {
  int id = 0;
  ServerKind kind = ServerKind::Fog;
  double capacity_hz = 0.0;
};

struct User {
  int id = 0;
  Task task;
  Device device;
  double weight_energy = 0.0;  // in [0, 1]
  double weight_time = 1.0;    // in (0, 1]
  // Keyed by server id; key presence encodes connectivity.
  std::map<int, Link> links;
};

/// A user's pure strategy: compute locally or offload to one server.
class Strategy {
 public:
  Strategy() : server_(kLocalTag) {}

  static Strategy local() { return Strategy(); }
  static Strategy offload(int server_id) {
    Strategy s;
    s.server_ = server_id;
    return s;
  }

  bool is_local() const { return server_ == kLocalTag; }

  /// Server id; only meaningful when !is_local().
  int server() const { return server_; }

  bool operator==(const Strategy&) const = default;

 private:
  static constexpr int kLocalTag = -1;
  int server_;
};

/// Strategy matrix A: one strategy per user, indexed by user id.
using OffloadProfile = std::vector<Strategy>;

constexpr int kCloudServerId = 0;

struct Scenario {
  std::vector<User> users;
  std::vector<Server> servers;
  std::string label;

  int n_users() const { return static_cast<int>(users.size()); }
  int n_fog() const { return static_cast<int>(servers.size()) - 1; }
  bool is_cloud(int server_id) const { return server_id == kCloudServerId; }
};

struct InfeasibleProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Empty result means the scenario is well formed; otherwise each entry
/// names the offending user/server and the violated rule.
std::vector<std::string> validate_scenario(const Scenario& s);

/// [Local, Offload(s) for s in ascending link order]. Stable across calls.
std::vector<Strategy> feasible_strategies(const User& u);

bool strategy_feasible(const User& u, Strategy strat);
bool profile_feasible(const Scenario& s, const OffloadProfile& p);

/// Throws InfeasibleProfileError naming the first violating user.
void require_feasible(const Scenario& s, const OffloadProfile& p);

OffloadProfile all_local_profile(const Scenario& s);

}  // namespace fogsim
