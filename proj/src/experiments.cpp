#include "fogsim/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fogsim/cost.hpp"
#include "json.hpp"

namespace fogsim {

namespace {

Scenario without_fog_links(const Scenario& s) {
  Scenario cloud_only = s;
  for (User& u : cloud_only.users) {
    std::erase_if(u.links, [&](const auto& kv) {
      return !cloud_only.is_cloud(kv.first);
    });
  }
  return cloud_only;
}

}  // namespace

std::vector<std::pair<std::string, double>> metrics_fields(
    const RunMetrics& m) {
  return {
      {"avg_qoe", m.avg_qoe},
      {"avg_delay_s", m.avg_delay_s},
      {"compute_s", m.delay_breakdown.compute_s},
      {"transmit_s", m.delay_breakdown.transmit_s},
      {"rtt_s", m.delay_breakdown.rtt_s},
      {"beneficial_total", static_cast<double>(m.beneficial_total)},
      {"beneficial_cloud", static_cast<double>(m.beneficial_cloud)},
      {"beneficial_fog", static_cast<double>(m.beneficial_fog)},
      {"frac_beneficial", m.frac_beneficial},
      {"social_cost_ne", m.social_cost_ne},
      {"social_cost_local", m.social_cost_local},
      {"social_cost_cloud_only", m.social_cost_cloud_only},
      {"social_cost_opt", m.social_cost_opt},
      {"opt_exact", m.opt_exact ? 1.0 : 0.0},
      {"updates", static_cast<double>(m.updates)},
      {"rounds", static_cast<double>(m.rounds)},
  };
}

RunMetrics measure(const Scenario& s, const EquilibriumReport& report,
                   const DynamicsConfig& dyn, std::uint64_t cap) {
  if (!report.converged) {
    throw std::invalid_argument("measure requires a converged report");
  }
  const OffloadProfile& p = report.profile;
  require_feasible(s, p);
  const int n_users = s.n_users();

  RunMetrics m;
  m.updates = report.updates;
  m.rounds = report.rounds;
  for (int n = 0; n < n_users; ++n) {
    const double q = qoe(s, n, p[n], p);
    m.avg_qoe += q;
    TimeComponents t;
    if (p[n].is_local()) {
      t = local_cost(s.users[n]).time_components;
    } else {
      t = offload_cost(s, n, p[n].server(), p).time_components;
      if (q > 0.0) {
        ++m.beneficial_total;
        if (s.is_cloud(p[n].server())) {
          ++m.beneficial_cloud;
        } else {
          ++m.beneficial_fog;
        }
      }
    }
    m.avg_delay_s += t.total();
    m.delay_breakdown.compute_s += t.compute_s;
    m.delay_breakdown.transmit_s += t.transmit_s;
    m.delay_breakdown.rtt_s += t.rtt_s;
    m.social_cost_local += local_cost(s.users[n]).weighted_cost;
  }
  m.avg_qoe /= n_users;
  m.avg_delay_s /= n_users;
  m.delay_breakdown.compute_s /= n_users;
  m.delay_breakdown.transmit_s /= n_users;
  m.delay_breakdown.rtt_s /= n_users;
  m.frac_beneficial = static_cast<double>(m.beneficial_total) / n_users;
  m.social_cost_ne = social_cost(s, p);

  const Scenario cloud_only = without_fog_links(s);
  m.social_cost_cloud_only =
      run_best_response(cloud_only, DynamicsConfig{0.0, dyn.max_rounds,
                                                   dyn.order, dyn.shuffle_seed},
                        all_local_profile(cloud_only))
          .social_cost;

  const OptimumResult opt = social_optimum(s, cap);
  m.social_cost_opt = opt.cost;
  m.opt_exact = opt.exact;
  return m;
}

ReplicateResult replicate(GeneratorConfig cfg, const DynamicsConfig& dyn,
                          int n_reps, std::uint64_t base_seed) {
  if (n_reps < 1) throw std::invalid_argument("n_reps must be >= 1");
  ReplicateResult out;
  for (int rep = 0; rep < n_reps; ++rep) {
    cfg.seed = base_seed + static_cast<std::uint64_t>(rep);
    const Scenario s = generate(cfg);
    EquilibriumReport report =
        dyn.epsilon > 0.0
            ? run_epsilon_better_response(s, dyn, all_local_profile(s))
            : run_best_response(s, dyn, all_local_profile(s));
    out.runs.push_back({cfg.seed, measure(s, report, dyn)});
  }

  const std::size_t n_fields = metrics_fields(out.runs[0].metrics).size();
  out.mean.assign(n_fields, 0.0);
  out.stddev.assign(n_fields, 0.0);
  for (const Replication& r : out.runs) {
    const auto fields = metrics_fields(r.metrics);
    for (std::size_t i = 0; i < n_fields; ++i) out.mean[i] += fields[i].second;
  }
  for (double& v : out.mean) v /= n_reps;
  if (n_reps > 1) {
    for (const Replication& r : out.runs) {
      const auto fields = metrics_fields(r.metrics);
      for (std::size_t i = 0; i < n_fields; ++i) {
        const double d = fields[i].second - out.mean[i];
        out.stddev[i] += d * d;
      }
    }
    for (double& v : out.stddev) v = std::sqrt(v / (n_reps - 1));
  }
  return out;
}

SweepResult sweep(SweepAxis axis, const std::vector<double>& values,
                  GeneratorConfig cfg_template, const DynamicsConfig& dyn,
                  int n_reps, std::uint64_t base_seed) {
  if (values.empty()) throw std::invalid_argument("values must be nonempty");
  SweepResult result;
  result.axis = axis;
  for (double v : values) {
    GeneratorConfig cfg = cfg_template;
    switch (axis) {
      case SweepAxis::Users:
        if (v < 1.0 || v != std::floor(v)) {
          throw std::invalid_argument("user counts must be positive integers");
        }
        cfg.n_users = static_cast<int>(v);
        break;
      case SweepAxis::FogNodes:
        if (v < 0.0 || v != std::floor(v)) {
          throw std::invalid_argument("fog counts must be nonnegative integers");
        }
        cfg.n_fog = static_cast<int>(v);
        break;
      case SweepAxis::CloudRtt:
        if (!(v >= 0.0)) throw std::invalid_argument("rtt must be >= 0");
        cfg.cloud_rtt_s = v;
        break;
    }
    result.points.push_back({v, replicate(cfg, dyn, n_reps, base_seed)});
  }
  return result;
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Users:
      return "n";
    case SweepAxis::FogNodes:
      return "s";
    case SweepAxis::CloudRtt:
      return "rtt";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& r) {
  std::string csv = "axis,axis_value,seed";
  const RunMetrics probe;
  for (const auto& [name, value] : metrics_fields(probe)) {
    (void)value;
    csv += "," + name;
  }
  csv += "\n";

  const std::string axis = axis_name(r.axis);
  for (const SweepPoint& pt : r.points) {
    const std::string prefix = axis + "," + fmt(pt.axis_value) + ",";
    for (const Replication& run : pt.result.runs) {
      csv += prefix + std::to_string(run.seed);
      for (const auto& [name, value] : metrics_fields(run.metrics)) {
        (void)name;
        csv += "," + fmt(value);
      }
      csv += "\n";
    }
    csv += prefix + "mean";
    for (double v : pt.result.mean) csv += "," + fmt(v);
    csv += "\n" + prefix + "std";
    for (double v : pt.result.stddev) csv += "," + fmt(v);
    csv += "\n";
  }
  return csv;
}

std::string sweep_to_json_text(const SweepResult& r) {
  nlohmann::json j;
  j["axis"] = axis_name(r.axis);
  j["points"] = nlohmann::json::array();
  const auto names = metrics_fields(RunMetrics{});
  for (const SweepPoint& pt : r.points) {
    nlohmann::json point;
    point["axis_value"] = pt.axis_value;
    point["n_replications"] = pt.result.runs.size();
    point["runs"] = nlohmann::json::array();
    for (const Replication& run : pt.result.runs) {
      nlohmann::json rj;
      rj["seed"] = run.seed;
      for (const auto& [name, value] : metrics_fields(run.metrics)) {
        rj[name] = value;
      }
      point["runs"].push_back(rj);
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      point["mean"][names[i].first] = pt.result.mean[i];
      point["std"][names[i].first] = pt.result.stddev[i];
    }
    j["points"].push_back(point);
  }
  return j.dump(2) + "\n";
}

}  // namespace fogsim
