#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/game.hpp"
#include "fogsim/oracle.hpp"
#include "fogsim/scenario.hpp"

namespace fogsim {

struct DelayBreakdown {
  double compute_s = 0.0;
  double transmit_s = 0.0;
  double rtt_s = 0.0;
};

/// Per-run equilibrium metrics. A user is "beneficial" when it offloads
/// with strictly positive QoE.
struct RunMetrics {
  double avg_qoe = 0.0;
  double avg_delay_s = 0.0;
  DelayBreakdown delay_breakdown;  // means over all users
  int beneficial_total = 0;
  int beneficial_cloud = 0;
  int beneficial_fog = 0;
  double frac_beneficial = 0.0;
  double social_cost_ne = 0.0;
  double social_cost_local = 0.0;
  double social_cost_cloud_only = 0.0;
  double social_cost_opt = 0.0;
  bool opt_exact = false;
  long updates = 0;
  int rounds = 0;
};

/// Metric column names and values in CSV order (everything after the
/// axis/seed columns). Aggregation and CSV output work off this view.
std::vector<std::pair<std::string, double>> metrics_fields(const RunMetrics& m);

/// Computes RunMetrics from a converged report. The cloud-only baseline
/// reruns the dynamics on a copy of the scenario with fog links removed;
/// the local baseline is the all-Local profile. Throws on !report.converged.
RunMetrics measure(const Scenario& s, const EquilibriumReport& report,
                   const DynamicsConfig& dyn,
                   std::uint64_t cap = kDefaultEnumerationCap);

struct Replication {
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct ReplicateResult {
  std::vector<Replication> runs;
  std::vector<double> mean;    // per metrics_fields entry
  std::vector<double> stddev;  // sample standard deviation, 0 when n = 1
};

/// Runs seeds base_seed .. base_seed + n_reps - 1 and aggregates
/// element-wise. Deterministic in its inputs.
ReplicateResult replicate(GeneratorConfig cfg, const DynamicsConfig& dyn,
                          int n_reps, std::uint64_t base_seed);

enum class SweepAxis { Users, FogNodes, CloudRtt };

struct SweepPoint {
  double axis_value = 0.0;
  ReplicateResult result;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Users;
  std::vector<SweepPoint> points;
};

/// One replicate() per axis value, varying only that field of the template.
SweepResult sweep(SweepAxis axis, const std::vector<double>& values,
                  GeneratorConfig cfg_template, const DynamicsConfig& dyn,
                  int n_reps, std::uint64_t base_seed);

std::string axis_name(SweepAxis axis);

/// One row per (axis_value, replication) plus mean/std aggregate rows
/// (seed column "mean"/"std").
std::string sweep_to_csv(const SweepResult& r);
std::string sweep_to_json_text(const SweepResult& r);

}  // namespace fogsim
