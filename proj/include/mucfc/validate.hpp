#pragma once

// Self-check suites behind the `validate` CLI command: randomized sweeps of
// the model's structural guarantees, each reporting trial/failure counts and
// a reproducing seed on first failure.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mucfc/allocation.hpp"
#include "mucfc/dynamics.hpp"
#include "mucfc/model.hpp"
#include "mucfc/preferences.hpp"
#include "mucfc/rng.hpp"
#include "mucfc/scenario_gen.hpp"

namespace mucfc {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string detail;  ///< first failure description, empty when clean

  bool passed() const { return failures == 0; }
};

namespace detail {

// Random task spec over the stock parameter ranges, threshold admissible for
// coalitions up to the given size.
inline TaskSpec random_task(std::mt19937_64& rng, int coalition_size = 1) {
  TaskSpec t;
  t.id = 0;
  t.value = uniform_real(rng, 5.0, 10.0);
  t.workload = uniform_real(rng, 1.0, 1.5) * t.value;
  t.max_capacity = uniform_real(rng, 5.0, 6.0);
  t.alpha = uniform_real(rng, 0.004, 0.01) * t.value;
  const double q =
      4.0 * t.value * t.max_capacity / (t.alpha * t.workload * coalition_size);
  const double lb = 2.0 * t.max_capacity / (1.0 + std::sqrt(1.0 + q));
  t.threshold = uniform_real(rng, std::max(lb, 0.5 * t.max_capacity), t.max_capacity);
  return t;
}

inline Scenario random_scenario(std::mt19937_64& rng, int max_uavs = 10, int max_tasks = 4) {
  GenConfig cfg;
  cfg.n_tasks = 1 + uniform_int(rng, max_tasks);
  cfg.n_uavs = cfg.n_tasks + uniform_int(rng, max_uavs - cfg.n_tasks + 1);
  cfg.r = uniform_real(rng, 0.004, 0.01);
  cfg.seed = rng();
  return generate(cfg);
}

inline Assignment random_assignment(std::mt19937_64& rng, const Scenario& s) {
  Assignment a;
  a.selection.resize(s.num_uavs());
  for (int& t : a.selection) t = uniform_int(rng, s.num_tasks());
  return a;
}

inline void record_failure(SuiteResult& res, std::uint64_t seed, const std::string& what) {
  ++res.failures;
  if (res.detail.empty()) res.detail = what + " (seed " + std::to_string(seed) + ")";
}

}  // namespace detail

/// Revenue is continuous at the threshold: the two branches agree within
/// 1e-6 * value when evaluated 1e-9 on either side. Takes the revenue
/// function as a parameter so tests can aim it at deliberately broken ones.
template <class RevenueFn>
SuiteResult revenue_continuity_suite(int trials, std::uint64_t seed, RevenueFn rev) {
  SuiteResult res{"revenue continuity", trials, 0, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const TaskSpec t = detail::random_task(rng);
    const double eps = 1e-9;
    const double below = rev(t, t.threshold - eps);
    const double above = rev(t, t.threshold + eps);
    if (!(std::abs(below - above) <= 1e-6 * t.value))
      detail::record_failure(res, seed,
                             "revenue jumps at the threshold: " + std::to_string(below) +
                                 " vs " + std::to_string(above));
  }
  return res;
}

inline SuiteResult revenue_continuity_suite(int trials, std::uint64_t seed) {
  return revenue_continuity_suite(trials, seed,
                                  [](const TaskSpec& t, double e) { return revenue(t, e); });
}

/// Revenue never exceeds its threshold peak, and the peak equals the task
/// value.
inline SuiteResult revenue_peak_suite(int trials, std::uint64_t seed) {
  SuiteResult res{"revenue peak", trials, 0, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const TaskSpec t = detail::random_task(rng);
    if (std::abs(revenue(t, t.threshold) - t.value) > 1e-12 * t.value) {
      detail::record_failure(res, seed, "peak revenue differs from task value");
      continue;
    }
    const double e = uniform_real(rng, 1e-6, t.max_capacity);
    if (revenue(t, e) > t.value * (1.0 + 1e-12))
      detail::record_failure(res, seed, "revenue exceeds the value peak");
  }
  return res;
}

/// With the threshold at or above its size-adjusted lower bound, coalition
/// utility rises with capacity up to the threshold and falls beyond it
/// (checked on a 200-point grid each side, slack 1e-9).
inline SuiteResult threshold_monotonicity_suite(int trials, std::uint64_t seed) {
  SuiteResult res{"threshold monotonicity", trials, 0, ""};
  std::mt19937_64 rng(seed);
  constexpr int kGrid = 200;
  for (int i = 0; i < trials; ++i) {
    const int size = 1 + uniform_int(rng, 8);
    const TaskSpec t = detail::random_task(rng, size);
    bool ok = true;
    double prev = coalition_value(t, t.threshold / kGrid, size);
    for (int k = 2; k <= kGrid && ok; ++k) {
      const double cur = coalition_value(t, t.threshold * k / kGrid, size);
      ok = cur >= prev - 1e-9;
      prev = cur;
    }
    prev = coalition_value(t, t.threshold, size);
    for (int k = 1; k < kGrid && ok; ++k) {
      const double e = t.threshold + (t.max_capacity - t.threshold) * k / kGrid;
      const double cur = coalition_value(t, e, size);
      ok = cur <= prev + 1e-9;
      prev = cur;
    }
    if (!ok)
      detail::record_failure(res, seed, "utility not unimodal around the threshold");
  }
  return res;
}

/// Sampling inside the join interval always yields a positive join gain;
/// sampling inside the leave interval always yields a positive leave gain
/// with the remaining capacity still at or above the threshold.
inline SuiteResult motivation_interval_suite(int trials, std::uint64_t seed) {
  SuiteResult res{"motivation intervals", trials, 0, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const TaskSpec t = detail::random_task(rng, 9);
    const bool join_case = (i % 2) == 0;

    if (join_case) {
      const int size = 1 + uniform_int(rng, 8);
      const double cap = uniform_real(rng, 1e-3, t.threshold);
      const auto ival = delta1_interval(t, size, cap);
      if (!ival) continue;
      const double e_j = ival->lower + uniform_real(rng, 0.0, 1.0) * ival->width();
      const double gain = detail::add_member_gain(t, cap, size, e_j);
      if (!(gain > 0.0) && e_j > ival->lower)
        detail::record_failure(res, seed, "join gain not positive inside the interval");
    } else {
      const int size = 2 + uniform_int(rng, 8);
      const double cap =
          uniform_real(rng, std::nextafter(t.threshold, t.max_capacity), t.max_capacity);
      const auto ival = delta2_interval(t, size, cap);
      if (!ival) continue;
      const double e_j = uniform_real(rng, 0.0, 1.0) * ival->upper;
      if (e_j <= 0.0) continue;
      const double gain = -detail::add_member_gain(t, cap - e_j, size - 1, e_j);
      if (!(gain > 0.0) || !(cap - e_j >= t.threshold - 1e-12))
        detail::record_failure(res, seed, "leave gain not positive inside the interval");
    }
  }
  return res;
}

/// Shapley shares sum to the coalition utility (1e-9) and identical UAVs in
/// one coalition receive identical shares (1e-12).
inline SuiteResult shapley_suite(int trials, std::uint64_t seed) {
  SuiteResult res{"shapley", trials, 0, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    Scenario s = detail::random_scenario(rng, 8, 3);
    // Clone one UAV's efficiencies to exercise the symmetry check.
    if (s.num_uavs() >= 2) s.uavs[1].efficiency = s.uavs[0].efficiency;
    const Assignment a = detail::random_assignment(rng, s);
    bool ok = true;
    for (int task = 0; task < s.num_tasks() && ok; ++task) {
      const AllocationResult alloc = shapley_allocate(s, a, task);
      ok = std::abs(alloc.total() - coalition_utility(s, a, task)) <= 1e-9;
    }
    if (ok && s.num_uavs() >= 2 && a.selection[0] == a.selection[1]) {
      const AllocationResult alloc = shapley_allocate(s, a, a.selection[0]);
      ok = std::abs(alloc.shares.at(0) - alloc.shares.at(1)) <= 1e-12;
    }
    if (!ok) detail::record_failure(res, seed, "shapley efficiency or symmetry violated");
  }
  return res;
}

/// A unilateral deviation changes the deviator's marginal-utility score by
/// exactly the change in the potential (1e-9).
inline SuiteResult potential_identity_suite(int trials, std::uint64_t seed) {
  SuiteResult res{"potential identity", trials, 0, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const Scenario s = detail::random_scenario(rng, 10, 4);
    if (s.num_tasks() < 2) continue;
    const Assignment a = detail::random_assignment(rng, s);
    const int uav = uniform_int(rng, s.num_uavs());
    int to = uniform_int(rng, s.num_tasks() - 1);
    if (to >= a.selection[uav]) ++to;

    const SwitchEvaluation ev = evaluate_switch(s, a, OrderKind::MarginalUtility, uav, to);
    const double phi_before = potential(s, a);
    const double phi_after = potential(s, with_move(a, uav, to));
    const double lhs = ev.score_candidate - ev.score_current;
    const double rhs = phi_after - phi_before;
    if (!(std::abs(lhs - rhs) <= 1e-9))
      detail::record_failure(res, seed,
                             "score change " + std::to_string(lhs) +
                                 " differs from potential change " + std::to_string(rhs));
  }
  return res;
}

/// Converged marginal-utility runs end in states the exhaustive scan calls
/// stable, and a re-run from such a state accepts no switch.
inline SuiteResult stability_suite(int trials, std::uint64_t seed) {
  SuiteResult res{"stability", trials, 0, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const Scenario s = detail::random_scenario(rng, 10, 5);
    const DynamicsConfig cfg =
        DynamicsConfig::defaults_for(s, OrderKind::MarginalUtility, rng());
    const RunTrace trace = run(s, cfg);
    if (!trace.converged) {
      detail::record_failure(res, seed, "run failed to converge");
      continue;
    }
    if (!is_stable(s, trace.final_assignment, cfg.order, cfg.gate)) {
      detail::record_failure(res, seed, "converged state is not stable");
      continue;
    }
    std::mt19937_64 replay(cfg.rng_seed + 1);
    Assignment a = trace.final_assignment;
    for (int k = 0; k < cfg.stall_window; ++k) {
      auto [next, rec] = step(s, a, cfg, replay);
      if (rec.accepted) {
        detail::record_failure(res, seed, "stable state accepted a switch");
        break;
      }
      a = std::move(next);
    }
  }
  return res;
}

struct SuiteSpec {
  std::string id;       ///< CLI name
  int default_trials;
};

inline std::vector<SuiteSpec> suite_specs() {
  return {{"continuity", 1000}, {"peak", 1000},    {"monotonicity", 100},
          {"motivation", 1000}, {"shapley", 500},  {"potential", 200},
          {"stability", 50}};
}

inline SuiteResult run_suite(const std::string& id, int trials, std::uint64_t seed) {
  if (id == "continuity") return revenue_continuity_suite(trials, seed);
  if (id == "peak") return revenue_peak_suite(trials, seed);
  if (id == "monotonicity") return threshold_monotonicity_suite(trials, seed);
  if (id == "motivation") return motivation_interval_suite(trials, seed);
  if (id == "shapley") return shapley_suite(trials, seed);
  if (id == "potential") return potential_identity_suite(trials, seed);
  if (id == "stability") return stability_suite(trials, seed);
  throw std::invalid_argument("unknown suite \"" + id + "\"");
}

}  // namespace mucfc
