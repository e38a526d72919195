#pragma once

#include <cstdint>
#include <vector>

#include "fcbell/behavior.hpp"
#include "fcbell/expression.hpp"
#include "fcbell/scenario.hpp"

namespace fcbell {

inline Behavior induced_behavior(const Behavior& behavior, int removed_party, int fixed_setting);

/// One term of the party recursion: the n-party expression with one party's
/// setting and output fixed, rewritten as an (n-1)-party expression with the
/// same coefficient table. The removed party's data is absorbed by the first
/// remaining party through the effective input
///
///   s' = [s + s_fixed]_m
///
/// and effective output
///
///   r' = [r + r_fixed - floor((s + s_fixed)/m)]_k.
template <class Value>
class SubExpression {
 public:
  SubExpression(BellExpression<Value> parent, int removed_party, int fixed_setting, int fixed_output)
      : parent_(std::move(parent)),
        removed_party_(removed_party),
        absorbing_party_(removed_party == 1 ? 2 : 1),
        fixed_setting_(fixed_setting),
        fixed_output_(fixed_output) {}

  const BellExpression<Value>& parent() const { return parent_; }
  int removed_party() const { return removed_party_; }     // 1-based
  int absorbing_party() const { return absorbing_party_; } // 1-based
  int fixed_setting() const { return fixed_setting_; }
  int fixed_output() const { return fixed_output_; }

  int effective_input(int setting) const {
    return detail::imod(setting + fixed_setting_, parent_.scenario().settings);
  }

  int effective_output(int setting, int output) const {
    const long long carry = detail::floordiv(setting + fixed_setting_, parent_.scenario().settings);
    return detail::imod(output + fixed_output_ - carry, parent_.scenario().outcomes);
  }

  /// The (n-1)-party expression the substitution produces; same table f.
  BellExpression<Value> reduced_expression() const {
    const Scenario& sc = parent_.scenario();
    return BellExpression<Value>(Scenario(sc.parties - 1, sc.settings, sc.outcomes),
                                 parent_.coefficients());
  }

  /// Value of this term on a parent-scenario behavior: the reduced
  /// expression evaluated on the induced (n-1)-party statistics.
  double value_on(const Behavior& behavior) const {
    return evaluate(reduced_expression(), induced_behavior(behavior, removed_party_, fixed_setting_));
  }

 private:
  BellExpression<Value> parent_;
  int removed_party_;
  int absorbing_party_;
  int fixed_setting_;
  int fixed_output_;
};

/// The (n-1)-party statistics obtained from an n-party behavior by fixing
/// `removed_party`'s setting and folding its contribution into the first
/// remaining party's effective input and output. Summing the reduced
/// expression's value over the fixed setting recovers the parent value.
inline Behavior induced_behavior(const Behavior& behavior, int removed_party, int fixed_setting) {
  const Scenario& sc = behavior.scenario();
  if (sc.parties < 3) throw precondition_error("induced behavior requires at least 3 parties");
  if (removed_party < 1 || removed_party > sc.parties) {
    throw precondition_error("removed party index must lie in 1..n");
  }
  if (fixed_setting < 0 || fixed_setting >= sc.settings) {
    throw index_error("fixed setting out of range");
  }
  const int absorbing_party = removed_party == 1 ? 2 : 1;
  const Scenario reduced_sc(sc.parties - 1, sc.settings, sc.outcomes);

  std::vector<double> reduced(reduced_sc.settings_vector_count() * sc.outcomes, 0.0);
  std::vector<int> sub_settings(static_cast<std::size_t>(reduced_sc.parties), 0);
  std::vector<int> parent_settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    // Map reduced settings back onto the parent parties, undoing the
    // effective-input substitution on the absorbing party.
    int carry = 0;
    {
      std::size_t src = 0;
      for (int p = 1; p <= sc.parties; ++p) {
        if (p == removed_party) {
          parent_settings[static_cast<std::size_t>(p - 1)] = fixed_setting;
          continue;
        }
        int s = sub_settings[src++];
        if (p == absorbing_party) {
          const int original = detail::imod(s - fixed_setting, sc.settings);
          carry = static_cast<int>(detail::floordiv(original + fixed_setting, sc.settings));
          s = original;
        }
        parent_settings[static_cast<std::size_t>(p - 1)] = s;
      }
    }
    const std::uint64_t parent_index = detail::settings_index(sc, parent_settings);
    for (int r = 0; r < sc.outcomes; ++r) {
      reduced[v * sc.outcomes + static_cast<std::uint64_t>(r)] =
          behavior.reduced_at(parent_index, detail::imod(r + carry, sc.outcomes));
    }
    ++v;
  } while (detail::next_tuple(sub_settings, sc.settings));
  return Behavior(reduced_sc, std::move(reduced));
}

/// The full list of recursion terms, one per (fixed setting, fixed output)
/// pair of the removed party, ordered by setting then output.
template <class Value>
std::vector<SubExpression<Value>> decompose(const BellExpression<Value>& expr, int party) {
  const Scenario& sc = expr.scenario();
  if (sc.parties < 3) {
    throw precondition_error("decomposition requires at least 3 parties");
  }
  if (party < 1 || party > sc.parties) {
    throw precondition_error("party index must lie in 1..n");
  }
  std::vector<SubExpression<Value>> terms;
  terms.reserve(static_cast<std::size_t>(sc.settings) * sc.outcomes);
  for (int s = 0; s < sc.settings; ++s) {
    for (int r = 0; r < sc.outcomes; ++r) {
      terms.emplace_back(expr, party, s, r);
    }
  }
  return terms;
}

}  // namespace fcbell
