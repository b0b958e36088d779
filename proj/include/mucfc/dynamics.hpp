#pragma once

// Randomized improvement dynamics over unilateral task switches, potential
// tracking, and exhaustive Nash-stability checks.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "mucfc/format.hpp"
#include "mucfc/preferences.hpp"
#include "mucfc/rng.hpp"

namespace mucfc {

/// Strict: a proposal is admissible only if the joined coalition gains from
/// the arrival and the departed coalition gains from the departure. Off:
/// every proposal is admissible and the preference order decides alone.
enum class GateKind { Strict, Off };

inline const char* to_string(GateKind gate) {
  return gate == GateKind::Strict ? "strict" : "off";
}

/// Stock runs are ungated for every order: the strict gate only admits
/// moves that raise both affected coalitions' utilities, which freezes the
/// dynamics whenever no such move exists (common once coalitions shrink to
/// singletons). It stays available as an opt-in.
inline GateKind default_gate(OrderKind) { return GateKind::Off; }

struct DynamicsConfig {
  OrderKind order = OrderKind::MarginalUtility;
  GateKind gate = GateKind::Off;
  int max_iterations = 1;
  int stall_window = 1;  ///< rejected proposals in a row before a full stability scan
  std::uint64_t rng_seed = 0;

  /// Stock configuration for a scenario: budget of 50*N*M proposals, a
  /// stability scan every N*M consecutive rejections, no admissibility gate.
  static DynamicsConfig defaults_for(const Scenario& s, OrderKind order,
                                     std::uint64_t seed) {
    DynamicsConfig cfg;
    cfg.order = order;
    cfg.gate = default_gate(order);
    cfg.max_iterations = 50 * s.num_uavs() * s.num_tasks();
    cfg.stall_window = s.num_uavs() * s.num_tasks();
    cfg.rng_seed = seed;
    return cfg;
  }
};

/// One proposal: which UAV considered moving where, whether the move was
/// taken, and the post-proposal potential and total utility.
struct IterationRecord {
  int iteration = 0;
  int uav = 0;
  int from_task = 0;
  int to_task = 0;
  bool accepted = false;
  double potential = 0.0;
  double total_utility = 0.0;
};

struct RunTrace {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  Assignment final_assignment;
  double initial_potential = 0.0;
  double initial_total_utility = 0.0;
  double final_potential = 0.0;
  double final_total_utility = 0.0;

  int iterations_run() const { return static_cast<int>(iterations.size()); }
};

/// Potential of the game state: the sum of every UAV's Shapley share.
inline double potential(const Scenario& s, const Assignment& a) {
  double sum = 0.0;
  for (int i = 0; i < s.num_tasks(); ++i) sum += shapley_allocate(s, a, i).total();
  return sum;
}

/// Total utility summed directly over coalitions, bypassing the allocation.
inline double total_utility(const Scenario& s, const Assignment& a) {
  double sum = 0.0;
  for (int i = 0; i < s.num_tasks(); ++i) sum += coalition_utility(s, a, i);
  return sum;
}

/// Admissibility test of Algorithm-style proposals: the move must raise both
/// affected coalitions' utilities (the executable content of the joining and
/// leaving incentive ranges).
inline bool gate_admits(const Scenario& s, const Assignment& a, GateKind gate,
                        int uav_id, int to_task) {
  if (gate == GateKind::Off) return true;
  return join_gain(s, a, to_task, uav_id) > 0.0 &&
         leave_gain(s, a, a.selection[uav_id], uav_id) > 0.0;
}

/// Exhaustive scan over all N*(M-1) unilateral deviations: true iff none is
/// both admissible under the gate and preferred under the order.
inline bool is_stable(const Scenario& s, const Assignment& a, OrderKind order,
                      GateKind gate) {
  const int m = s.num_tasks();
  for (int j = 0; j < s.num_uavs(); ++j) {
    for (int t = 0; t < m; ++t) {
      if (t == a.selection[j]) continue;
      if (!gate_admits(s, a, gate, j, t)) continue;
      if (evaluate_switch(s, a, order, j, t).preferred) return false;
    }
  }
  return true;
}

namespace detail {

// Core of step(): one uniformly random (UAV, task) proposal. When the state
// is unchanged and the caller already knows its potential/utility, those
// values are reused instead of recomputed; they are identical numbers either
// way since both come from the same functions on the same state.
inline std::pair<Assignment, IterationRecord> step_with_cache(
    const Scenario& s, const Assignment& a, const DynamicsConfig& cfg,
    std::mt19937_64& rng, std::optional<std::pair<double, double>> cached) {
  const int m = s.num_tasks();
  IterationRecord rec;
  rec.uav = uniform_int(rng, s.num_uavs());
  rec.from_task = a.selection[rec.uav];
  rec.to_task = rec.from_task;
  if (m > 1) {
    const int t = uniform_int(rng, m - 1);
    rec.to_task = t < rec.from_task ? t : t + 1;
  }

  bool accepted = false;
  if (rec.to_task != rec.from_task && gate_admits(s, a, cfg.gate, rec.uav, rec.to_task))
    accepted = evaluate_switch(s, a, cfg.order, rec.uav, rec.to_task).preferred;
  rec.accepted = accepted;

  Assignment next = a;
  if (accepted) {
    next.selection[rec.uav] = rec.to_task;
    rec.potential = potential(s, next);
    rec.total_utility = total_utility(s, next);
  } else if (cached) {
    rec.potential = cached->first;
    rec.total_utility = cached->second;
  } else {
    rec.potential = potential(s, a);
    rec.total_utility = total_utility(s, a);
  }
  return {std::move(next), rec};
}

}  // namespace detail

/// One dynamics iteration: propose a uniformly random (UAV, task) pair,
/// accept it iff it passes the gate and the preference order, and return the
/// (possibly unchanged) next assignment with its trace record. With a single
/// task the proposal is vacuous and always rejected.
inline std::pair<Assignment, IterationRecord> step(const Scenario& s, const Assignment& a,
                                                   const DynamicsConfig& cfg,
                                                   std::mt19937_64& rng) {
  return detail::step_with_cache(s, a, cfg, rng, std::nullopt);
}

/// Full dynamics run from a random initial partition. Stops as soon as an
/// exhaustive scan confirms stability (checked up front and after every
/// stall_window consecutive rejections) or when the iteration budget is
/// spent. The trace keeps one record per proposal.
inline RunTrace run(const Scenario& s, const DynamicsConfig& cfg) {
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (cfg.stall_window < 1) throw std::invalid_argument("stall_window must be >= 1");

  std::mt19937_64 rng(cfg.rng_seed);
  Assignment a;
  a.selection.resize(s.num_uavs());
  for (int j = 0; j < s.num_uavs(); ++j) a.selection[j] = uniform_int(rng, s.num_tasks());

  RunTrace trace;
  double pot = potential(s, a);
  double tot = total_utility(s, a);
  trace.initial_potential = pot;
  trace.initial_total_utility = tot;

  bool converged = is_stable(s, a, cfg.order, cfg.gate);
  int stall = 0;
  for (int iter = 0; iter < cfg.max_iterations && !converged; ++iter) {
    auto [next, rec] = detail::step_with_cache(s, a, cfg, rng, std::pair{pot, tot});
    rec.iteration = iter;
    a = std::move(next);
    pot = rec.potential;
    tot = rec.total_utility;
    trace.iterations.push_back(rec);
    if (rec.accepted) {
      stall = 0;
    } else if (++stall >= cfg.stall_window) {
      converged = is_stable(s, a, cfg.order, cfg.gate);
      stall = 0;
    }
  }

  trace.converged = converged;
  trace.final_assignment = std::move(a);
  trace.final_potential = pot;
  trace.final_total_utility = tot;
  return trace;
}

inline constexpr const char* kTraceCsvHeader =
    "iteration,uav,from_task,to_task,accepted,potential,total_utility";

inline void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kTraceCsvHeader << '\n';
  for (const IterationRecord& r : trace.iterations) {
    out << r.iteration << ',' << r.uav << ',' << r.from_task << ',' << r.to_task << ','
        << (r.accepted ? 1 : 0) << ',' << format_double(r.potential) << ','
        << format_double(r.total_utility) << '\n';
  }
}

}  // namespace mucfc
