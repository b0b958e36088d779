#pragma once

// Preference orders deciding coalition switches: the marginal-utility order
// plus the Selfish and Pareto baselines.

#include <stdexcept>
#include <string>

#include "mucfc/allocation.hpp"
#include "mucfc/model.hpp"

namespace mucfc {

enum class OrderKind { MarginalUtility, Selfish, Pareto };

inline const char* to_string(OrderKind order) {
  switch (order) {
    case OrderKind::MarginalUtility: return "marginal";
    case OrderKind::Selfish: return "selfish";
    case OrderKind::Pareto: return "pareto";
  }
  return "?";
}

/// Outcome of scoring one hypothetical unilateral switch. For score-based
/// orders preferred is exactly score_candidate > score_current; under Pareto
/// it additionally requires that no affected member is left worse off.
struct SwitchEvaluation {
  int uav_id = 0;
  int from_task = 0;
  int to_task = 0;
  double score_current = 0.0;
  double score_candidate = 0.0;
  bool preferred = false;
};

/// Copy of the assignment with one UAV moved to another task.
inline Assignment with_move(const Assignment& a, int uav_id, int to_task) {
  Assignment moved = a;
  moved.selection.at(uav_id) = to_task;
  return moved;
}

/// Marginal-utility score of UAV uav_id in the given state: its own share
/// plus all partners' shares in its coalition plus all shares in the
/// coalition it last departed. Each coalition is summed exactly once, so
/// passing the current task as previous_task scores just the own coalition.
inline double marginal_utility_score(const Scenario& s, const Assignment& a, int uav_id,
                                     int previous_task) {
  detail::check_uav_id(s, uav_id);
  detail::check_task_id(s, previous_task);
  const int current = a.selection[uav_id];
  double score = shapley_allocate(s, a, current).total();
  if (previous_task != current) score += shapley_allocate(s, a, previous_task).total();
  return score;
}

/// Selfish score: the UAV's own Shapley share, nothing else.
inline double selfish_score(const Scenario& s, const Assignment& a, int uav_id) {
  return uav_utility(s, a, uav_id);
}

/// True iff moving uav_id to to_task strictly raises its own share while no
/// member of the departed coalition (after the departure) or of the joined
/// coalition (after the arrival) ends up below its previous share.
inline bool pareto_prefers(const Scenario& s, const Assignment& a, int uav_id,
                           int to_task) {
  detail::check_task_id(s, to_task);
  detail::check_uav_id(s, uav_id);
  const int from = a.selection[uav_id];
  if (to_task == from)
    throw std::invalid_argument("pareto_prefers: candidate task equals current task");
  const Assignment moved = with_move(a, uav_id, to_task);

  const AllocationResult from_before = shapley_allocate(s, a, from);
  const AllocationResult to_before = shapley_allocate(s, a, to_task);
  const AllocationResult from_after = shapley_allocate(s, moved, from);
  const AllocationResult to_after = shapley_allocate(s, moved, to_task);

  if (!(to_after.shares.at(uav_id) > from_before.shares.at(uav_id))) return false;
  for (const auto& [f, after] : from_after.shares)
    if (after < from_before.shares.at(f)) return false;
  for (const auto& [g, before] : to_before.shares)
    if (to_after.shares.at(g) < before) return false;
  return true;
}

/// Scores one candidate switch under the given order. Both marginal-utility
/// scores cover the same pair of affected coalitions (current + candidate),
/// which makes the score difference equal the potential difference of the
/// move. Ties never switch.
inline SwitchEvaluation evaluate_switch(const Scenario& s, const Assignment& a,
                                        OrderKind order, int uav_id, int to_task) {
  detail::check_task_id(s, to_task);
  detail::check_uav_id(s, uav_id);
  const int from = a.selection[uav_id];
  if (to_task == from)
    throw std::invalid_argument("evaluate_switch: candidate task equals current task");

  SwitchEvaluation ev;
  ev.uav_id = uav_id;
  ev.from_task = from;
  ev.to_task = to_task;

  const Assignment moved = with_move(a, uav_id, to_task);
  switch (order) {
    case OrderKind::MarginalUtility:
      ev.score_current = marginal_utility_score(s, a, uav_id, to_task);
      ev.score_candidate = marginal_utility_score(s, moved, uav_id, from);
      ev.preferred = ev.score_candidate > ev.score_current;
      break;
    case OrderKind::Selfish:
      ev.score_current = uav_utility(s, a, uav_id);
      ev.score_candidate = uav_utility(s, moved, uav_id);
      ev.preferred = ev.score_candidate > ev.score_current;
      break;
    case OrderKind::Pareto:
      ev.score_current = uav_utility(s, a, uav_id);
      ev.score_candidate = uav_utility(s, moved, uav_id);
      ev.preferred = pareto_prefers(s, a, uav_id, to_task);
      break;
  }
  return ev;
}

}  // namespace mucfc
