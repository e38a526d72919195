#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "fcbell/scenario.hpp"
#include "fcbell/tensor.hpp"

namespace fcbell {

/// One response table per party: responses[i][s] is party i's outcome for
/// setting s. The induced behavior puts all weight on the outcome-sum
/// residue [sum_i responses[i][s_i]]_k.
struct DeterministicStrategy {
  std::vector<std::vector<int>> responses;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

/// A coalition strategy: parties are partitioned into groups and each group
/// answers with an outcome-sum residue as a function of its joint settings.
/// Only the residue matters to a full-correlation expression, so this table
/// captures every strategy the coalition can play.
struct GroupedStrategy {
  /// Disjoint, covering groups of 0-based party indices, each ascending.
  std::vector<std::vector<int>> groups;
  /// responses[g][joint] is group g's residue for joint settings index
  /// `joint` (first listed member most significant, base m).
  std::vector<std::vector<int>> responses;

  friend bool operator==(const GroupedStrategy&, const GroupedStrategy&) = default;
};

inline void validate_strategy(const Scenario& sc, const DeterministicStrategy& strat) {
  if (static_cast<int>(strat.responses.size()) != sc.parties) {
    throw dimension_mismatch("deterministic strategy must have one table per party");
  }
  for (const auto& table : strat.responses) {
    if (static_cast<int>(table.size()) != sc.settings) {
      throw dimension_mismatch("response table length does not match settings count");
    }
    for (int r : table) {
      if (r < 0 || r >= sc.outcomes) throw index_error("response outcome out of range");
    }
  }
}

inline void validate_strategy(const Scenario& sc, const GroupedStrategy& strat) {
  if (strat.groups.empty() || strat.groups.size() != strat.responses.size()) {
    throw dimension_mismatch("grouped strategy needs one response table per group");
  }
  std::vector<bool> seen(static_cast<std::size_t>(sc.parties), false);
  for (std::size_t g = 0; g < strat.groups.size(); ++g) {
    if (strat.groups[g].empty()) throw dimension_mismatch("groups must be nonempty");
    for (int p : strat.groups[g]) {
      if (p < 0 || p >= sc.parties || seen[static_cast<std::size_t>(p)]) {
        throw dimension_mismatch("groups must partition the parties");
      }
      seen[static_cast<std::size_t>(p)] = true;
    }
    const std::uint64_t expected = detail::upow(static_cast<std::uint64_t>(sc.settings),
                                                static_cast<int>(strat.groups[g].size()));
    if (strat.responses[g].size() != expected) {
      throw dimension_mismatch("group response table size does not match joint settings count");
    }
    for (int r : strat.responses[g]) {
      if (r < 0 || r >= sc.outcomes) throw index_error("response outcome out of range");
    }
  }
  for (bool s : seen) {
    if (!s) throw dimension_mismatch("groups must cover all parties");
  }
}

/// Outcome-sum residue the strategy produces for a settings vector.
inline int strategy_residue(const Scenario& sc, const DeterministicStrategy& strat,
                            std::span<const int> settings) {
  long long sum = 0;
  for (int i = 0; i < sc.parties; ++i) {
    sum += strat.responses[static_cast<std::size_t>(i)][static_cast<std::size_t>(settings[static_cast<std::size_t>(i)])];
  }
  return detail::imod(sum, sc.outcomes);
}

inline int strategy_residue(const Scenario& sc, const GroupedStrategy& strat,
                            std::span<const int> settings) {
  long long sum = 0;
  for (std::size_t g = 0; g < strat.groups.size(); ++g) {
    std::uint64_t joint = 0;
    for (int p : strat.groups[g]) {
      joint = joint * static_cast<std::uint64_t>(sc.settings) +
              static_cast<std::uint64_t>(settings[static_cast<std::size_t>(p)]);
    }
    sum += strat.responses[g][joint];
  }
  return detail::imod(sum, sc.outcomes);
}

/// Expression value of a strategy: the sum over settings vectors of the
/// coefficient picked out by the strategy's deterministic residue.
template <class Value, class Strategy>
Value evaluate_on_strategy(const ExpandedTensor<Value>& tensor, const Strategy& strat) {
  const Scenario& sc = tensor.scenario();
  validate_strategy(sc, strat);
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t idx = 0;
  Value total{0};
  do {
    total += tensor.at(idx, strategy_residue(sc, strat, settings));
    ++idx;
  } while (detail::next_tuple(settings, sc.settings));
  return total;
}

template <class Value, class Strategy>
Value evaluate_on_strategy(const BellExpression<Value>& expr, const Strategy& strat) {
  const Scenario& sc = expr.scenario();
  validate_strategy(sc, strat);
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  Value total{0};
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    total += expr.coefficient_for_sum(sum, strategy_residue(sc, strat, settings));
  } while (detail::next_tuple(settings, sc.settings));
  return total;
}

inline nlohmann::json strategy_to_json(const DeterministicStrategy& strat) {
  return nlohmann::json(strat.responses);
}

inline nlohmann::json strategy_to_json(const GroupedStrategy& strat) {
  return {{"partition", strat.groups}, {"tables", strat.responses}};
}

}  // namespace fcbell
