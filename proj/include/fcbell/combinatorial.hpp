#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcbell/expression.hpp"
#include "fcbell/report.hpp"
#include "fcbell/scenario.hpp"
#include "fcbell/strategy.hpp"
#include "fcbell/tensor.hpp"

namespace fcbell {

/// Cost guard for exhaustive enumeration, measured in coefficient
/// evaluations (strategy count times settings vectors). Exceeding the guard
/// is an error: a truncated enumeration would not be a bound at all.
struct EnumerationOptions {
  double max_evaluations = 1e8;
};

namespace detail {

/// All partitions of {0..n-1} into exactly `num_groups` nonempty blocks,
/// in restricted-growth-string order. Blocks are listed by first member.
inline std::vector<std::vector<std::vector<int>>> partitions_into_groups(int parties, int num_groups) {
  std::vector<std::vector<std::vector<int>>> result;
  std::vector<int> assignment(static_cast<std::size_t>(parties), 0);
  // Depth-first over restricted growth strings: assignment[i] <= 1 + max(previous).
  auto emit = [&]() {
    int blocks = 0;
    for (int a : assignment) blocks = std::max(blocks, a + 1);
    if (blocks != num_groups) return;
    std::vector<std::vector<int>> partition(static_cast<std::size_t>(num_groups));
    for (int i = 0; i < parties; ++i) partition[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);
    result.push_back(std::move(partition));
  };
  auto rec = [&](auto&& self, int i, int max_used) -> void {
    if (i == parties) {
      emit();
      return;
    }
    for (int a = 0; a <= std::min(max_used + 1, num_groups - 1); ++a) {
      assignment[static_cast<std::size_t>(i)] = a;
      self(self, i + 1, std::max(max_used, a));
    }
  };
  rec(rec, 0, -1);
  return result;
}

/// Enumeration cost of one partition: product over groups of k^(m^|g|),
/// times the m^n settings vectors each strategy is evaluated on.
inline double partition_cost(const Scenario& sc, const std::vector<std::vector<int>>& groups) {
  double strategies = 1.0;
  for (const auto& g : groups) {
    strategies *= pow_estimate(sc.outcomes, pow_estimate(sc.settings, static_cast<double>(g.size())));
    if (!std::isfinite(strategies)) return strategies;
  }
  return strategies * pow_estimate(sc.settings, sc.parties);
}

/// Minimum of the tensor over grouped strategies for the given partitions,
/// scanning partitions and response tables in lexicographic order so the
/// first minimizer wins ties deterministically.
template <class Value>
BoundReport<Value> minimize_over_partitions(const ExpandedTensor<Value>& tensor,
                                            const std::vector<std::vector<std::vector<int>>>& partitions,
                                            BoundKind kind, const EnumerationOptions& options) {
  const Scenario& sc = tensor.scenario();
  double total_cost = 0.0;
  for (const auto& partition : partitions) total_cost += partition_cost(sc, partition);
  if (!(total_cost <= options.max_evaluations)) {
    throw guard_exceeded("enumeration needs about " + std::to_string(total_cost) +
                             " evaluations, guard is " + std::to_string(options.max_evaluations),
                         total_cost, options.max_evaluations);
  }

  const std::uint64_t settings_count = sc.settings_vector_count();
  bool have_best = false;
  Value best_value{};
  GroupedStrategy best_strategy;

  std::vector<int> settings;
  for (const auto& partition : partitions) {
    const std::size_t num_groups = partition.size();
    // joint_index[v][g]: group g's joint settings index under settings vector v.
    std::vector<std::uint64_t> joint_index(settings_count * num_groups);
    std::vector<std::uint64_t> table_size(num_groups);
    for (std::size_t g = 0; g < num_groups; ++g) {
      table_size[g] = upow(static_cast<std::uint64_t>(sc.settings), static_cast<int>(partition[g].size()));
    }
    settings.assign(static_cast<std::size_t>(sc.parties), 0);
    std::uint64_t v = 0;
    do {
      for (std::size_t g = 0; g < num_groups; ++g) {
        std::uint64_t joint = 0;
        for (int p : partition[g]) {
          joint = joint * static_cast<std::uint64_t>(sc.settings) +
                  static_cast<std::uint64_t>(settings[static_cast<std::size_t>(p)]);
        }
        joint_index[v * num_groups + g] = joint;
      }
      ++v;
    } while (next_tuple(settings, sc.settings));

    // Response tables, concatenated and advanced as one odometer.
    std::vector<std::vector<int>> responses(num_groups);
    for (std::size_t g = 0; g < num_groups; ++g) responses[g].assign(table_size[g], 0);
    bool more = true;
    while (more) {
      Value value{0};
      for (std::uint64_t w = 0; w < settings_count; ++w) {
        long long residue = 0;
        for (std::size_t g = 0; g < num_groups; ++g) {
          residue += responses[g][joint_index[w * num_groups + g]];
        }
        value += tensor.at(w, imod(residue, sc.outcomes));
      }
      if (!have_best || value < best_value) {
        have_best = true;
        best_value = value;
        best_strategy = GroupedStrategy{partition, responses};
      }
      // Advance the concatenated odometer, last table fastest.
      more = false;
      for (std::size_t g = num_groups; g-- > 0 && !more;) {
        more = next_tuple(responses[g], sc.outcomes);
      }
    }
  }

  BoundReport<Value> report;
  report.kind = kind;
  report.value = best_value;
  report.method = BoundMethod::combinatorial_exact;
  report.witness = Witness{std::move(best_strategy)};
  return report;
}

inline DeterministicStrategy to_deterministic(const GroupedStrategy& grouped, int parties) {
  DeterministicStrategy strat;
  strat.responses.resize(static_cast<std::size_t>(parties));
  for (std::size_t g = 0; g < grouped.groups.size(); ++g) {
    strat.responses[static_cast<std::size_t>(grouped.groups[g].front())] = grouped.responses[g];
  }
  return strat;
}

}  // namespace detail

/// Exact local bound: minimum over all deterministic strategies. Shared
/// randomness only yields convex mixtures of these, so the minimum over
/// deterministic strategies is the minimum over all local models.
template <class Value>
BoundReport<Value> local_bound(const ExpandedTensor<Value>& tensor,
                               const EnumerationOptions& options = {}) {
  const Scenario& sc = tensor.scenario();
  auto report = detail::minimize_over_partitions(
      tensor, detail::partitions_into_groups(sc.parties, sc.parties), BoundKind::local, options);
  report.witness = Witness{detail::to_deterministic(std::get<GroupedStrategy>(*report.witness), sc.parties)};
  return report;
}

template <class Value>
BoundReport<Value> local_bound(const BellExpression<Value>& expr,
                               const EnumerationOptions& options = {}) {
  return local_bound(expand(expr), options);
}

/// Exact Svetlichny bound: minimum over all bipartitions of the parties and
/// all grouped strategies. Requires n >= 3.
template <class Value>
BoundReport<Value> svetlichny_bound(const ExpandedTensor<Value>& tensor,
                                    const EnumerationOptions& options = {}) {
  const Scenario& sc = tensor.scenario();
  if (sc.parties < 3) throw precondition_error("Svetlichny bound requires at least 3 parties");
  auto report = detail::minimize_over_partitions(
      tensor, detail::partitions_into_groups(sc.parties, 2), BoundKind::svetlichny, options);
  return report;
}

template <class Value>
BoundReport<Value> svetlichny_bound(const BellExpression<Value>& expr,
                                    const EnumerationOptions& options = {}) {
  return svetlichny_bound(expand(expr), options);
}

/// Exact bound for models in which the parties split into exactly
/// `num_groups` collaborating groups. num_groups = n is the local bound,
/// num_groups = 2 the Svetlichny bound.
template <class Value>
BoundReport<Value> g_group_bound(const ExpandedTensor<Value>& tensor, int num_groups,
                                 const EnumerationOptions& options = {}) {
  const Scenario& sc = tensor.scenario();
  if (num_groups < 2 || num_groups > sc.parties) {
    throw precondition_error("group count must lie between 2 and the number of parties");
  }
  return detail::minimize_over_partitions(
      tensor, detail::partitions_into_groups(sc.parties, num_groups), BoundKind::g_group, options);
}

template <class Value>
BoundReport<Value> g_group_bound(const BellExpression<Value>& expr, int num_groups,
                                 const EnumerationOptions& options = {}) {
  return g_group_bound(expand(expr), num_groups, options);
}

/// Re-evaluates a report's witness; exact reproduction of the bound value is
/// a library invariant.
template <class Value>
Value evaluate_witness(const ExpandedTensor<Value>& tensor, const BoundReport<Value>& report) {
  if (!report.witness) throw precondition_error("report carries no witness");
  return std::visit([&](const auto& strat) { return evaluate_on_strategy(tensor, strat); },
                    *report.witness);
}

}  // namespace fcbell
