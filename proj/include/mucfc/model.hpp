#pragma once

// Economic model of task-driven coalition formation: threshold-shaped task
// revenue, per-coalition loss, coalition utility, and the closed-form bounds
// that tell a UAV when joining or leaving a coalition pays off.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mucfc {

/// Economic parameters of one task.
struct TaskSpec {
  int id = 0;
  double value = 0.0;         ///< V: peak revenue, reached at capacity == threshold
  double workload = 0.0;      ///< Q: total work units
  double max_capacity = 0.0;  ///< p: capacity at which revenue is exhausted
  double threshold = 0.0;     ///< beta: capacity at which revenue peaks
  double alpha = 0.0;         ///< flight cost per UAV per unit time
};

/// One UAV and its per-task work rates.
struct UavSpec {
  int id = 0;
  std::vector<double> efficiency;  ///< work units per unit time, one entry per task
};

/// Immutable game instance: M tasks, N >= M UAVs.
struct Scenario {
  std::vector<TaskSpec> tasks;
  std::vector<UavSpec> uavs;
  std::uint64_t seed = 0;  ///< recorded for reproducibility

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  int num_uavs() const { return static_cast<int>(uavs.size()); }
};

/// Strategy profile: selection[j] is the task UAV j works on. Coalitions are
/// derived as C_i = { j | selection[j] == i }, so they are disjoint and cover
/// all UAVs by construction.
struct Assignment {
  std::vector<int> selection;
};

/// Closed interval of admissible efficiencies.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return lower <= x && x <= upper; }
  double width() const { return upper - lower; }
};

/// Minimal admissible revenue threshold for a single-UAV coalition:
/// 2p / (1 + sqrt(1 + 4Vp/(alpha Q))). Thresholds at or above this keep
/// coalition utility rising up to the threshold and falling beyond it.
inline double threshold_lower_bound(double value, double workload,
                                    double max_capacity, double alpha) {
  const double q = 4.0 * value * max_capacity / (alpha * workload);
  return 2.0 * max_capacity / (1.0 + std::sqrt(1.0 + q));
}

inline void validate(const TaskSpec& t) {
  const std::string where = "task " + std::to_string(t.id);
  if (!(t.value > 0.0)) throw std::invalid_argument(where + ": value must be positive");
  if (!(t.workload > 0.0)) throw std::invalid_argument(where + ": workload must be positive");
  if (!(t.max_capacity > 0.0)) throw std::invalid_argument(where + ": max_capacity must be positive");
  if (!(t.alpha > 0.0)) throw std::invalid_argument(where + ": alpha must be positive");
  const double lb = threshold_lower_bound(t.value, t.workload, t.max_capacity, t.alpha);
  if (!(t.threshold >= lb))
    throw std::invalid_argument(where + ": threshold " + std::to_string(t.threshold) +
                                " below admissible lower bound " + std::to_string(lb));
  if (!(t.threshold < t.max_capacity))
    throw std::invalid_argument(where + ": threshold must be below max_capacity");
}

inline void validate(const Scenario& s) {
  if (s.tasks.empty()) throw std::invalid_argument("scenario has no tasks");
  if (s.num_uavs() < s.num_tasks())
    throw std::invalid_argument("scenario needs at least as many UAVs as tasks");
  for (int i = 0; i < s.num_tasks(); ++i) {
    if (s.tasks[i].id != i)
      throw std::invalid_argument("task id " + std::to_string(s.tasks[i].id) +
                                  " does not match its position " + std::to_string(i));
    validate(s.tasks[i]);
  }
  for (int j = 0; j < s.num_uavs(); ++j) {
    const UavSpec& u = s.uavs[j];
    if (u.id != j)
      throw std::invalid_argument("uav id " + std::to_string(u.id) +
                                  " does not match its position " + std::to_string(j));
    if (static_cast<int>(u.efficiency.size()) != s.num_tasks())
      throw std::invalid_argument("uav " + std::to_string(j) +
                                  ": efficiency vector length does not match task count");
    for (double e : u.efficiency)
      if (!(e > 0.0))
        throw std::invalid_argument("uav " + std::to_string(j) +
                                    ": efficiencies must be positive");
  }
}

inline void validate(const Assignment& a, const Scenario& s) {
  if (static_cast<int>(a.selection.size()) != s.num_uavs())
    throw std::invalid_argument("assignment length does not match UAV count");
  for (int t : a.selection)
    if (t < 0 || t >= s.num_tasks())
      throw std::invalid_argument("assignment selects task " + std::to_string(t) +
                                  " outside 0.." + std::to_string(s.num_tasks() - 1));
}

namespace detail {

inline void check_task_id(const Scenario& s, int task_id) {
  if (task_id < 0 || task_id >= s.num_tasks())
    throw std::out_of_range("task id " + std::to_string(task_id) + " out of range");
}

inline void check_uav_id(const Scenario& s, int uav_id) {
  if (uav_id < 0 || uav_id >= s.num_uavs())
    throw std::out_of_range("uav id " + std::to_string(uav_id) + " out of range");
}

}  // namespace detail

/// Members of the coalition working on task_id, in ascending UAV id order.
inline std::vector<int> coalition_members(const Scenario& s, const Assignment& a,
                                          int task_id) {
  detail::check_task_id(s, task_id);
  std::vector<int> members;
  for (int j = 0; j < static_cast<int>(a.selection.size()); ++j)
    if (a.selection[j] == task_id) members.push_back(j);
  return members;
}

inline int coalition_size(const Scenario& s, const Assignment& a, int task_id) {
  detail::check_task_id(s, task_id);
  int n = 0;
  for (int t : a.selection) n += (t == task_id);
  return n;
}

/// Working capacity of a coalition: sum of its members' efficiencies for the
/// task. Zero for an empty coalition.
inline double capacity(const Scenario& s, const Assignment& a, int task_id) {
  detail::check_task_id(s, task_id);
  double cap = 0.0;
  for (int j = 0; j < static_cast<int>(a.selection.size()); ++j)
    if (a.selection[j] == task_id) cap += s.uavs[j].efficiency[task_id];
  return cap;
}

/// Time for a coalition with the given capacity to finish the task: Q / e.
inline double completion_time(const TaskSpec& task, double coalition_capacity) {
  if (!(coalition_capacity > 0.0))
    throw std::domain_error("completion time undefined for capacity <= 0");
  return task.workload / coalition_capacity;
}

/// Flight loss of a coalition: alpha * |C| * Q / e. Empty coalitions lose
/// nothing.
inline double loss(const TaskSpec& task, int coalition_size, double coalition_capacity) {
  if (coalition_size == 0) return 0.0;
  return task.alpha * coalition_size * task.workload / coalition_capacity;
}

/// Piecewise revenue in the coalition's capacity e: rises linearly to the
/// peak V at e == threshold, falls linearly to zero at e == max_capacity,
/// and stays zero beyond it.
inline double revenue(const TaskSpec& task, double coalition_capacity) {
  const double e = coalition_capacity;
  if (e <= 0.0) return 0.0;
  if (e <= task.threshold) return task.value * e / task.threshold;
  if (e < task.max_capacity)
    return task.value * (e - task.max_capacity) / (task.threshold - task.max_capacity);
  return 0.0;
}

/// Utility of a coalition described only by its size and capacity:
/// revenue minus loss, zero for the empty coalition. This is the
/// characteristic function driving every allocation and preference below.
inline double coalition_value(const TaskSpec& task, double coalition_capacity,
                              int coalition_size) {
  if (coalition_size == 0) return 0.0;
  return revenue(task, coalition_capacity) - loss(task, coalition_size, coalition_capacity);
}

/// Utility of the coalition currently assigned to task_id. May be negative.
inline double coalition_utility(const Scenario& s, const Assignment& a, int task_id) {
  detail::check_task_id(s, task_id);
  return coalition_value(s.tasks[task_id], capacity(s, a, task_id),
                         coalition_size(s, a, task_id));
}

namespace detail {

// Both gain directions go through this one arithmetic path, so
// join_gain(C, j) == -leave_gain(C + {j}, j) holds bit for bit.
inline double add_member_gain(const TaskSpec& task, double cap_without,
                              int size_without, double e_j) {
  const double before = coalition_value(task, cap_without, size_without);
  const double after = coalition_value(task, cap_without + e_j, size_without + 1);
  return after - before;
}

// Capacity and size of task_id's coalition with uav_id excluded.
inline std::pair<double, int> coalition_without(const Scenario& s, const Assignment& a,
                                                int task_id, int uav_id) {
  double cap = 0.0;
  int size = 0;
  for (int j = 0; j < static_cast<int>(a.selection.size()); ++j) {
    if (j == uav_id || a.selection[j] != task_id) continue;
    cap += s.uavs[j].efficiency[task_id];
    ++size;
  }
  return {cap, size};
}

}  // namespace detail

/// Utility change of coalition task_id if uav_id (currently elsewhere) joined.
inline double join_gain(const Scenario& s, const Assignment& a, int task_id, int uav_id) {
  detail::check_task_id(s, task_id);
  detail::check_uav_id(s, uav_id);
  if (a.selection[uav_id] == task_id)
    throw std::invalid_argument("uav " + std::to_string(uav_id) +
                                " is already in coalition " + std::to_string(task_id));
  const auto [cap, size] = detail::coalition_without(s, a, task_id, uav_id);
  return detail::add_member_gain(s.tasks[task_id], cap, size,
                                 s.uavs[uav_id].efficiency[task_id]);
}

/// Utility change of coalition task_id if member uav_id left.
inline double leave_gain(const Scenario& s, const Assignment& a, int task_id, int uav_id) {
  detail::check_task_id(s, task_id);
  detail::check_uav_id(s, uav_id);
  if (a.selection[uav_id] != task_id)
    throw std::invalid_argument("uav " + std::to_string(uav_id) +
                                " is not in coalition " + std::to_string(task_id));
  const auto [cap, size] = detail::coalition_without(s, a, task_id, uav_id);
  return -detail::add_member_gain(s.tasks[task_id], cap, size,
                                  s.uavs[uav_id].efficiency[task_id]);
}

/// Efficiency range within which a newcomer raises an under-threshold
/// coalition's utility while keeping its capacity at or below the threshold.
/// The lower endpoint is the positive root of x^2 + b x - c = 0, the
/// zero-gain efficiency; the upper endpoint is the remaining headroom below
/// the threshold. Empty whenever the root exceeds the headroom.
inline std::optional<Interval> delta1_interval(const TaskSpec& task, int coalition_size,
                                               double coalition_capacity) {
  const double e = coalition_capacity;
  if (!(e > 0.0))
    throw std::domain_error("delta1 interval needs a coalition with positive capacity");
  if (e > task.threshold)
    throw std::domain_error("delta1 interval undefined above the revenue threshold");
  const double b =
      e + task.alpha * task.workload * coalition_size * task.threshold / (task.value * e);
  const double c = task.alpha * task.workload * task.threshold / task.value;
  const double lower = 2.0 * c / (std::sqrt(b * b + 4.0 * c) + b);
  const double upper = task.threshold - e;
  if (!(lower <= upper)) return std::nullopt;
  return Interval{lower, upper};
}

/// Efficiency range within which a departing member raises an
/// over-threshold coalition's utility while the remainder stays at or above
/// the threshold. The capacity bound is e - threshold; the gain bound is the
/// positive root of x^2 - b x - c = 0, evaluated with the usual
/// cancellation-free branch split.
inline std::optional<Interval> delta2_interval(const TaskSpec& task, int coalition_size,
                                               double coalition_capacity) {
  const double e = coalition_capacity;
  if (!(e > task.threshold))
    throw std::domain_error("delta2 interval undefined at or below the revenue threshold");
  const double span = task.max_capacity - task.threshold;
  const double b =
      e - task.alpha * task.workload * coalition_size * span / (task.value * e);
  const double c = task.alpha * task.workload * span / task.value;
  const double disc = std::sqrt(b * b + 4.0 * c);
  const double root = b >= 0.0 ? (b + disc) / 2.0 : 2.0 * c / (disc - b);
  const double upper = std::min(e - task.threshold, root);
  if (!(upper > 0.0)) return std::nullopt;
  return Interval{0.0, upper};
}

}  // namespace mucfc
