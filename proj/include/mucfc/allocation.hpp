#pragma once

// Exact Shapley-value split of a coalition's utility among its members.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mucfc/model.hpp"

namespace mucfc {

/// Largest coalition the exact subset enumeration will accept. 2^22 memo
/// entries; anything bigger is a sign the caller is off the intended scale.
inline constexpr int kShapleyCoalitionCap = 22;

/// Shapley shares of one coalition.
struct AllocationResult {
  int task_id = 0;
  std::map<int, double> shares;  ///< uav id -> utility share

  double total() const {
    double sum = 0.0;
    for (const auto& [id, u] : shares) sum += u;
    return sum;
  }
};

namespace detail {

// Shapley shares of a k-player game given a characteristic function over
// member bitmasks (value_of_mask(0) is taken as 0). Subset values are
// tabulated once and reused for every member.
template <class ValueFn>
std::vector<double> shapley_shares(int k, ValueFn&& value_of_mask) {
  if (k == 0) return {};
  std::vector<double> w(k);  // w[s] = s! (k-1-s)! / k!
  w[0] = 1.0 / k;
  for (int s = 1; s < k; ++s) w[s] = w[s - 1] * s / (k - s);

  const std::uint32_t count = 1u << k;
  std::vector<double> v(count);
  v[0] = 0.0;
  for (std::uint32_t m = 1; m < count; ++m) v[m] = value_of_mask(m);

  std::vector<double> shares(k, 0.0);
  for (int j = 0; j < k; ++j) {
    const std::uint32_t bit = 1u << j;
    double share = 0.0;
    for (std::uint32_t m = 0; m < count; ++m) {
      if (m & bit) continue;
      share += w[std::popcount(m)] * (v[m | bit] - v[m]);
    }
    shares[j] = share;
  }
  return shares;
}

}  // namespace detail

/// Splits coalition task_id's utility among its members by exact Shapley
/// value. Shares sum to the coalition utility; an empty coalition yields an
/// empty share map.
inline AllocationResult shapley_allocate(const Scenario& s, const Assignment& a,
                                         int task_id) {
  const std::vector<int> members = coalition_members(s, a, task_id);
  const int k = static_cast<int>(members.size());
  if (k > kShapleyCoalitionCap)
    throw std::length_error("coalition of size " + std::to_string(k) +
                            " exceeds the Shapley enumeration cap of " +
                            std::to_string(kShapleyCoalitionCap));
  AllocationResult result;
  result.task_id = task_id;
  if (k == 0) return result;

  const TaskSpec& task = s.tasks[task_id];
  std::vector<double> eff(k);
  for (int i = 0; i < k; ++i) eff[i] = s.uavs[members[i]].efficiency[task_id];

  // Subset capacities, accumulating members in ascending id order so the
  // full-coalition capacity matches capacity() exactly.
  std::vector<double> cap(1u << k);
  cap[0] = 0.0;
  for (std::uint32_t m = 1; m < (1u << k); ++m) {
    const int top = std::bit_width(m) - 1;
    cap[m] = cap[m ^ (1u << top)] + eff[top];
  }

  const std::vector<double> shares = detail::shapley_shares(
      k, [&](std::uint32_t m) { return coalition_value(task, cap[m], std::popcount(m)); });
  for (int i = 0; i < k; ++i) result.shares[members[i]] = shares[i];
  return result;
}

/// The UAV's Shapley share in its current coalition.
inline double uav_utility(const Scenario& s, const Assignment& a, int uav_id) {
  detail::check_uav_id(s, uav_id);
  return shapley_allocate(s, a, a.selection[uav_id]).shares.at(uav_id);
}

}  // namespace mucfc
