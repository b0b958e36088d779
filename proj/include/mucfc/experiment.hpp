#pragma once

// Monte Carlo experiment harness: grids of (r, N, M, order) groups, many
// seeded rounds per group, deterministic aggregation, CSV emission.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mucfc/dynamics.hpp"
#include "mucfc/format.hpp"
#include "mucfc/scenario_gen.hpp"

namespace mucfc {

struct GroupSpec {
  double r = 0.006;
  OrderKind order = OrderKind::MarginalUtility;
  int n_uavs = 10;
  int n_tasks = 5;
};

struct RoundOutcome {
  double final_total_utility = 0.0;
  double final_potential = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> utility_curve;  ///< utility after t proposals; filled on request
};

/// Aggregates of one (r, order, N, M) group over its rounds.
struct ExperimentResult {
  double r = 0.0;
  OrderKind order = OrderKind::MarginalUtility;
  int n_uavs = 0;
  int n_tasks = 0;
  int rounds = 0;
  double mean_total_utility = 0.0;
  double std_total_utility = 0.0;
  double mean_per_task_utility = 0.0;
  double mean_per_uav_utility = 0.0;
  double mean_iterations = 0.0;
  double convergence_rate = 0.0;
};

struct ExperimentConfig {
  std::vector<double> r_grid = {0.006};
  std::vector<std::pair<int, int>> sizes = {{10, 5}};  ///< (N, M) pairs
  std::vector<OrderKind> orders = {OrderKind::MarginalUtility, OrderKind::Selfish,
                                   OrderKind::Pareto};
  int rounds = 50;
  std::uint64_t seed = 0;
  std::optional<GateKind> gate;  ///< per-order default when unset
  bool collect_curves = false;
  int threads = 0;  ///< 0 = hardware concurrency
};

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.r_grid.empty()) throw std::invalid_argument("empty r grid");
  if (cfg.sizes.empty()) throw std::invalid_argument("empty (N, M) grid");
  if (cfg.orders.empty()) throw std::invalid_argument("empty order list");
  if (cfg.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  for (auto [n, m] : cfg.sizes)
    if (m < 1 || n < m)
      throw std::invalid_argument("grid entry N=" + std::to_string(n) +
                                  " M=" + std::to_string(m) + " needs N >= M >= 1");
}

/// Group order in every CSV: r ascending over its grid, then the (N, M)
/// pairs as listed, then marginal/selfish/pareto.
inline std::vector<GroupSpec> make_groups(const ExperimentConfig& cfg) {
  std::vector<GroupSpec> groups;
  for (double r : cfg.r_grid)
    for (auto [n, m] : cfg.sizes)
      for (OrderKind order : cfg.orders) groups.push_back({r, order, n, m});
  return groups;
}

namespace detail {

// Scenario seeds depend on (master, r, N, M, round) only, so the three
// orders of one group face identical scenario draws.
inline std::uint64_t scenario_seed(std::uint64_t master, const GroupSpec& g, int round) {
  std::uint64_t h = mix_seed(master, std::bit_cast<std::uint64_t>(g.r));
  h = mix_seed(h, static_cast<std::uint64_t>(g.n_uavs));
  h = mix_seed(h, static_cast<std::uint64_t>(g.n_tasks));
  return mix_seed(h, static_cast<std::uint64_t>(round));
}

inline GateKind gate_for(const ExperimentConfig& cfg, OrderKind order) {
  return cfg.gate ? *cfg.gate : default_gate(order);
}

}  // namespace detail

inline RoundOutcome run_round(const ExperimentConfig& cfg, const GroupSpec& g, int round) {
  GenConfig gen;
  gen.n_uavs = g.n_uavs;
  gen.n_tasks = g.n_tasks;
  gen.r = g.r;
  gen.seed = detail::scenario_seed(cfg.seed, g, round);
  const Scenario scenario = generate(gen);

  DynamicsConfig dyn = DynamicsConfig::defaults_for(
      scenario, g.order, mix_seed(gen.seed, static_cast<std::uint64_t>(g.order) + 1));
  dyn.gate = detail::gate_for(cfg, g.order);
  const RunTrace trace = run(scenario, dyn);

  RoundOutcome out;
  out.final_total_utility = trace.final_total_utility;
  out.final_potential = trace.final_potential;
  out.iterations = trace.iterations_run();
  out.converged = trace.converged;
  if (cfg.collect_curves) {
    out.utility_curve.reserve(trace.iterations.size() + 1);
    out.utility_curve.push_back(trace.initial_total_utility);
    for (const IterationRecord& rec : trace.iterations)
      out.utility_curve.push_back(rec.total_utility);
  }
  return out;
}

/// Runs every (group, round) pair, rounds concurrently when allowed, and
/// returns outcomes indexed [group][round]. Output is schedule-independent:
/// each outcome lands in its own slot and all aggregation folds in index
/// order.
inline std::vector<std::vector<RoundOutcome>> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<GroupSpec> groups = make_groups(cfg);
  std::vector<std::vector<RoundOutcome>> outcomes(groups.size());
  for (auto& v : outcomes) v.resize(cfg.rounds);

  const int total = static_cast<int>(groups.size()) * cfg.rounds;
  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, total);

  if (threads == 1) {
    for (size_t gi = 0; gi < groups.size(); ++gi)
      for (int round = 0; round < cfg.rounds; ++round)
        outcomes[gi][round] = run_round(cfg, groups[gi], round);
    return outcomes;
  }

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const size_t gi = static_cast<size_t>(idx) / cfg.rounds;
      const int round = idx % cfg.rounds;
      outcomes[gi][round] = run_round(cfg, groups[gi], round);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return outcomes;
}

inline ExperimentResult aggregate(const GroupSpec& g, const std::vector<RoundOutcome>& rounds) {
  ExperimentResult res;
  res.r = g.r;
  res.order = g.order;
  res.n_uavs = g.n_uavs;
  res.n_tasks = g.n_tasks;
  res.rounds = static_cast<int>(rounds.size());

  double sum = 0.0, sum_iter = 0.0;
  int converged = 0;
  for (const RoundOutcome& r : rounds) {
    sum += r.final_total_utility;
    sum_iter += r.iterations;
    converged += r.converged;
  }
  const double n = static_cast<double>(res.rounds);
  res.mean_total_utility = sum / n;
  double ss = 0.0;
  for (const RoundOutcome& r : rounds) {
    const double d = r.final_total_utility - res.mean_total_utility;
    ss += d * d;
  }
  res.std_total_utility = res.rounds > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  res.mean_per_task_utility = res.mean_total_utility / g.n_tasks;
  res.mean_per_uav_utility = res.mean_total_utility / g.n_uavs;
  res.mean_iterations = sum_iter / n;
  res.convergence_rate = converged / n;
  return res;
}

inline constexpr const char* kExperimentCsvHeader =
    "r,order,n_uavs,n_tasks,rounds,mean_total_utility,std_total_utility,"
    "mean_per_task_utility,mean_per_uav_utility,mean_iterations,convergence_rate";

inline void write_experiment_csv(std::ostream& out, const std::vector<ExperimentResult>& rows) {
  out << kExperimentCsvHeader << '\n';
  for (const ExperimentResult& r : rows) {
    out << format_double(r.r) << ',' << to_string(r.order) << ',' << r.n_uavs << ','
        << r.n_tasks << ',' << r.rounds << ',' << format_double(r.mean_total_utility)
        << ',' << format_double(r.std_total_utility) << ','
        << format_double(r.mean_per_task_utility) << ','
        << format_double(r.mean_per_uav_utility) << ','
        << format_double(r.mean_iterations) << ','
        << format_double(r.convergence_rate) << '\n';
  }
}

/// Per-order utility-vs-iteration curve, averaged over rounds. Rounds that
/// finished early hold their final utility.
inline std::vector<double> mean_utility_curve(const std::vector<RoundOutcome>& rounds) {
  size_t len = 1;
  for (const RoundOutcome& r : rounds) len = std::max(len, r.utility_curve.size());
  std::vector<double> mean(len, 0.0);
  for (const RoundOutcome& r : rounds)
    for (size_t t = 0; t < len; ++t)
      mean[t] += t < r.utility_curve.size() ? r.utility_curve[t] : r.utility_curve.back();
  for (double& v : mean) v /= static_cast<double>(rounds.size());
  return mean;
}

inline constexpr const char* kConvergenceCsvHeader = "order,iteration,mean_total_utility";

inline void write_convergence_csv(
    std::ostream& out,
    const std::vector<std::pair<OrderKind, std::vector<double>>>& curves) {
  out << kConvergenceCsvHeader << '\n';
  for (const auto& [order, curve] : curves)
    for (size_t t = 0; t < curve.size(); ++t)
      out << to_string(order) << ',' << t << ',' << format_double(curve[t]) << '\n';
}

// Fixed experiment presets mirroring the comparison figures.

inline ExperimentConfig fig3_config(int rounds, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.r_grid.clear();
  for (int k = 4; k <= 10; ++k) cfg.r_grid.push_back(k / 1000.0);
  cfg.sizes = {{20, 15}, {15, 10}, {10, 5}};
  cfg.rounds = rounds;
  cfg.seed = seed;
  return cfg;
}

inline ExperimentConfig fig4_config(int rounds, std::uint64_t seed, int fixed_uavs = 20,
                                    int fixed_tasks = 4) {
  ExperimentConfig cfg;
  cfg.r_grid = {0.006, 0.01};
  cfg.sizes.clear();
  for (int m = 4; m <= fixed_uavs; m += 2) cfg.sizes.push_back({fixed_uavs, m});
  for (int n = std::max(4, fixed_tasks); n <= 20; n += 2)
    cfg.sizes.push_back({n, fixed_tasks});
  cfg.rounds = rounds;
  cfg.seed = seed;
  return cfg;
}

inline ExperimentConfig fig5_config(int rounds, std::uint64_t seed, int fixed_uavs = 20,
                                    int fixed_tasks = 4) {
  return fig4_config(rounds, seed, fixed_uavs, fixed_tasks);
}

inline ExperimentConfig fig6_config(int rounds, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.r_grid = {0.006};
  cfg.sizes = {{10, 5}};
  cfg.rounds = rounds;
  cfg.seed = seed;
  cfg.collect_curves = true;
  return cfg;
}

}  // namespace mucfc
