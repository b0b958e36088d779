// Command-line harness: single simulation runs with trace export, Monte
// Carlo experiment suites, and the model self-check suites.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mucfc/dynamics.hpp"
#include "mucfc/experiment.hpp"
#include "mucfc/format.hpp"
#include "mucfc/scenario_gen.hpp"
#include "mucfc/scenario_io.hpp"
#include "mucfc/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;

mucfc::OrderKind parse_order(const std::string& name) {
  if (name == "marginal") return mucfc::OrderKind::MarginalUtility;
  if (name == "selfish") return mucfc::OrderKind::Selfish;
  if (name == "pareto") return mucfc::OrderKind::Pareto;
  throw CLI::ValidationError("--order", "unknown order \"" + name + "\"");
}

int env_threads() {
  const char* raw = std::getenv("MUCFC_THREADS");
  if (raw == nullptr) return 0;
  const int v = std::atoi(raw);
  return v > 0 ? v : 1;
}

struct SimulateOptions {
  int uavs = 10;
  int tasks = 5;
  double r = 0.006;
  double xi_min = 1.0;
  double xi_max = 1.5;
  std::string order = "marginal";
  std::string gate;  // empty = per-order default
  std::uint64_t seed = 0;
  int max_iters = 0;  // 0 = 50*N*M
  std::string scenario_path;
  std::string trace_path;
  std::string save_scenario_path;
};

int run_simulate(const SimulateOptions& opt) {
  mucfc::Scenario scenario;
  if (!opt.scenario_path.empty()) {
    scenario = mucfc::load_scenario(opt.scenario_path);
  } else {
    mucfc::GenConfig gen;
    gen.n_uavs = opt.uavs;
    gen.n_tasks = opt.tasks;
    gen.r = opt.r;
    gen.xi_range = {opt.xi_min, opt.xi_max};
    gen.seed = opt.seed;
    scenario = mucfc::generate(gen);
    if (!opt.save_scenario_path.empty()) {
      const mucfc::json meta = mucfc::generator_metadata(gen);
      mucfc::save_scenario(opt.save_scenario_path, scenario, &meta);
    }
  }

  const mucfc::OrderKind order = parse_order(opt.order);
  mucfc::DynamicsConfig cfg = mucfc::DynamicsConfig::defaults_for(scenario, order, opt.seed);
  if (!opt.gate.empty())
    cfg.gate = opt.gate == "strict" ? mucfc::GateKind::Strict : mucfc::GateKind::Off;
  if (opt.max_iters > 0) cfg.max_iterations = opt.max_iters;

  const mucfc::RunTrace trace = mucfc::run(scenario, cfg);
  if (!opt.trace_path.empty()) {
    std::ofstream out(opt.trace_path);
    if (!out) throw std::runtime_error("cannot open " + opt.trace_path + " for writing");
    mucfc::write_trace_csv(out, trace);
  }

  std::cout << "uavs: " << scenario.num_uavs() << "  tasks: " << scenario.num_tasks()
            << "  order: " << mucfc::to_string(cfg.order)
            << "  gate: " << mucfc::to_string(cfg.gate) << "  seed: " << opt.seed << '\n';
  std::cout << "converged: " << (trace.converged ? "yes" : "no")
            << "  iterations: " << trace.iterations_run() << '\n';
  std::cout << "total utility: " << mucfc::format_double(trace.final_total_utility)
            << "  potential: " << mucfc::format_double(trace.final_potential) << '\n';
  for (int i = 0; i < scenario.num_tasks(); ++i) {
    std::cout << "task " << i << ": members [";
    const std::vector<int> members =
        mucfc::coalition_members(scenario, trace.final_assignment, i);
    for (size_t k = 0; k < members.size(); ++k)
      std::cout << (k ? " " : "") << members[k];
    std::cout << "] capacity "
              << mucfc::format_double(mucfc::capacity(scenario, trace.final_assignment, i))
              << " utility "
              << mucfc::format_double(
                     mucfc::coalition_utility(scenario, trace.final_assignment, i))
              << '\n';
  }
  return kExitOk;
}

struct ExperimentOptions {
  std::string preset;
  std::vector<int> uavs_grid;
  std::vector<int> tasks_grid;
  std::vector<double> r_grid;
  std::vector<std::string> orders;
  int rounds = 50;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string gate;
  int uavs = 0;   // preset override: fixed N in the task sweep
  int tasks = 0;  // preset override: fixed M in the UAV sweep
};

int run_experiment_cmd(const ExperimentOptions& opt) {
  mucfc::ExperimentConfig cfg;
  bool curves = false;
  if (opt.preset == "fig3") {
    cfg = mucfc::fig3_config(opt.rounds, opt.seed);
  } else if (opt.preset == "fig4" || opt.preset == "fig5") {
    const int fixed_n = opt.uavs > 0 ? opt.uavs : 20;
    const int fixed_m = opt.tasks > 0 ? opt.tasks : 4;
    cfg = opt.preset == "fig4" ? mucfc::fig4_config(opt.rounds, opt.seed, fixed_n, fixed_m)
                               : mucfc::fig5_config(opt.rounds, opt.seed, fixed_n, fixed_m);
  } else if (opt.preset == "fig6") {
    cfg = mucfc::fig6_config(opt.rounds, opt.seed);
    curves = true;
  } else if (opt.preset.empty()) {
    if (opt.uavs_grid.empty() || opt.tasks_grid.empty())
      throw CLI::ValidationError("experiment",
                                 "either a preset or --uavs-grid/--tasks-grid is required");
    cfg.sizes.clear();
    for (int n : opt.uavs_grid)
      for (int m : opt.tasks_grid)
        if (m <= n) cfg.sizes.push_back({n, m});
    if (cfg.sizes.empty())
      throw CLI::ValidationError("experiment", "grid contains no valid N >= M pair");
    cfg.rounds = opt.rounds;
    cfg.seed = opt.seed;
  } else {
    throw CLI::ValidationError("experiment", "unknown preset \"" + opt.preset + "\"");
  }

  if (!opt.r_grid.empty()) cfg.r_grid = opt.r_grid;
  if (!opt.orders.empty()) {
    cfg.orders.clear();
    for (const std::string& o : opt.orders) cfg.orders.push_back(parse_order(o));
  }
  if (!opt.gate.empty())
    cfg.gate = opt.gate == "strict" ? mucfc::GateKind::Strict : mucfc::GateKind::Off;
  cfg.threads = env_threads();

  const std::vector<mucfc::GroupSpec> groups = mucfc::make_groups(cfg);
  const auto outcomes = mucfc::run_experiment(cfg);

  std::ofstream out(opt.out_path);
  if (!out) throw std::runtime_error("cannot open " + opt.out_path + " for writing");
  if (curves) {
    std::vector<std::pair<mucfc::OrderKind, std::vector<double>>> series;
    for (size_t gi = 0; gi < groups.size(); ++gi)
      series.emplace_back(groups[gi].order, mucfc::mean_utility_curve(outcomes[gi]));
    mucfc::write_convergence_csv(out, series);
  } else {
    std::vector<mucfc::ExperimentResult> rows;
    rows.reserve(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi)
      rows.push_back(mucfc::aggregate(groups[gi], outcomes[gi]));
    mucfc::write_experiment_csv(out, rows);
  }
  if (!out) throw std::runtime_error("failed writing " + opt.out_path);
  std::cout << "wrote " << opt.out_path << " (" << groups.size() << " groups, "
            << cfg.rounds << " rounds each)\n";
  return kExitOk;
}

struct ValidateOptions {
  std::string suite;
  int trials = 0;  // 0 = per-suite default
  std::uint64_t seed = 12345;
};

int run_validate(const ValidateOptions& opt) {
  std::vector<mucfc::SuiteSpec> specs = mucfc::suite_specs();
  if (!opt.suite.empty()) {
    std::erase_if(specs, [&](const mucfc::SuiteSpec& s) { return s.id != opt.suite; });
    if (specs.empty()) throw CLI::ValidationError("--suite", "unknown suite \"" + opt.suite + "\"");
  }
  bool all_passed = true;
  for (const mucfc::SuiteSpec& spec : specs) {
    const int trials = opt.trials > 0 ? opt.trials : spec.default_trials;
    const mucfc::SuiteResult res = mucfc::run_suite(spec.id, trials, opt.seed);
    all_passed &= res.passed();
    std::cout << (res.passed() ? "PASS" : "FAIL") << "  " << res.name << ": "
              << (res.trials - res.failures) << "/" << res.trials << '\n';
    if (!res.passed()) std::cout << "      " << res.detail << '\n';
  }
  return all_passed ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"task-driven multi-UAV coalition formation simulator"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run one scenario to stability");
  simulate->add_option("--uavs", sim.uavs, "number of UAVs")->check(CLI::Range(1, 64));
  simulate->add_option("--tasks", sim.tasks, "number of tasks")->check(CLI::Range(1, 64));
  simulate->add_option("--r", sim.r, "flight cost as a fraction of task value");
  simulate->add_option("--xi-min", sim.xi_min, "lower workload/value ratio");
  simulate->add_option("--xi-max", sim.xi_max, "upper workload/value ratio");
  simulate->add_option("--order", sim.order, "preference order")
      ->check(CLI::IsMember({"marginal", "selfish", "pareto"}));
  simulate->add_option("--gate", sim.gate, "admissibility gate")
      ->check(CLI::IsMember({"strict", "off"}));
  simulate->add_option("--seed", sim.seed, "seed for generation and dynamics")->required();
  simulate->add_option("--max-iters", sim.max_iters, "proposal budget (default 50*N*M)");
  auto* scenario_opt =
      simulate->add_option("--scenario", sim.scenario_path, "load a scenario file");
  simulate->add_option("--trace", sim.trace_path, "write the iteration trace CSV here");
  simulate->add_option("--save-scenario", sim.save_scenario_path,
                       "write the generated scenario here")
      ->excludes(scenario_opt);

  ExperimentOptions exp;
  CLI::App* experiment = app.add_subcommand("experiment", "run a Monte Carlo comparison");
  experiment->add_option("preset", exp.preset, "fig3|fig4|fig5|fig6 (omit for custom grid)");
  experiment->add_option("--uavs-grid", exp.uavs_grid, "custom N grid");
  experiment->add_option("--tasks-grid", exp.tasks_grid, "custom M grid");
  experiment->add_option("--r-grid", exp.r_grid, "r values to sweep");
  experiment->add_option("--orders", exp.orders, "orders to compare")
      ->check(CLI::IsMember({"marginal", "selfish", "pareto"}));
  experiment->add_option("--rounds", exp.rounds, "scenarios per group")->check(CLI::Range(1, 100000));
  experiment->add_option("--seed", exp.seed, "master seed")->required();
  experiment->add_option("--out", exp.out_path, "output CSV path")->required();
  experiment->add_option("--gate", exp.gate, "admissibility gate override")
      ->check(CLI::IsMember({"strict", "off"}));
  experiment->add_option("--uavs", exp.uavs, "preset override: fixed N in the task sweep");
  experiment->add_option("--tasks", exp.tasks, "preset override: fixed M in the UAV sweep");

  ValidateOptions val;
  CLI::App* validate = app.add_subcommand("validate", "run the model self-check suites");
  validate->add_option("--suite", val.suite, "run a single suite (continuity, peak, "
                       "monotonicity, motivation, shapley, potential, stability)");
  validate->add_option("--trials", val.trials, "override the per-suite trial count");
  validate->add_option("--seed", val.seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help() << '\n';
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (experiment->parsed()) return run_experiment_cmd(exp);
    return run_validate(val);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
