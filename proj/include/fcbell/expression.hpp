#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "fcbell/coefficients.hpp"
#include "fcbell/scenario.hpp"

namespace fcbell {

/// A symmetric full-correlation Bell expression: the coefficient of
/// P([sum of outcomes]_k = r | settings) is
///
///   f([sum of settings]_m, [r - floor(sum of settings / m)]_k).
///
/// Coefficients depend on the settings vector only through its sum, so the
/// expression is invariant under any permutation of the parties. Instances
/// are immutable and safe to share across threads.
template <class Value>
class BellExpression {
 public:
  BellExpression(Scenario scenario, CoefficientFunction<Value> f)
      : scenario_(scenario), f_(std::move(f)) {
    if (f_.settings() != scenario_.settings || f_.outcomes() != scenario_.outcomes) {
      throw dimension_mismatch("coefficient function dimensions do not match scenario");
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const CoefficientFunction<Value>& coefficients() const { return f_; }

  /// Coefficient for a fully specified settings vector and outcome-sum residue.
  Value coefficient(std::span<const int> settings, int residue) const {
    if (static_cast<int>(settings.size()) != scenario_.parties) {
      throw dimension_mismatch("settings vector length does not match party count");
    }
    long long sum = 0;
    for (int s : settings) {
      if (s < 0 || s >= scenario_.settings) throw index_error("setting label out of range");
      sum += s;
    }
    if (residue < 0 || residue >= scenario_.outcomes) throw index_error("outcome residue out of range");
    return coefficient_for_sum(sum, residue);
  }

  /// Same coefficient, indexed by the settings sum directly (unchecked).
  Value coefficient_for_sum(long long settings_sum, int residue) const {
    const int s = detail::imod(settings_sum, scenario_.settings);
    const int shift = detail::imod(residue - detail::floordiv(settings_sum, scenario_.settings),
                                   scenario_.outcomes);
    return f_(s, shift);
  }

 private:
  Scenario scenario_;
  CoefficientFunction<Value> f_;
};

/// The unified expression for scenario (n, m, k): f = f_I. Only settings
/// vectors with settings-sum residue 0 or 1 carry nonzero coefficients.
inline BellExpression<std::int64_t> build_omega(const Scenario& scenario) {
  return BellExpression<std::int64_t>(scenario,
                                      identity_coefficients(scenario.settings, scenario.outcomes));
}

/// Expression for an arbitrary coefficient table.
template <class Value>
BellExpression<Value> build_general(const Scenario& scenario, CoefficientFunction<Value> f) {
  return BellExpression<Value>(scenario, std::move(f));
}

/// True when the table equals f_I for its dimensions.
template <class Value>
bool has_identity_coefficients(const CoefficientFunction<Value>& f) {
  const auto ident = identity_coefficients(f.settings(), f.outcomes());
  for (int s = 0; s < f.settings(); ++s) {
    for (int r = 0; r < f.outcomes(); ++r) {
      if (f(s, r) != static_cast<Value>(ident(s, r))) return false;
    }
  }
  return true;
}

}  // namespace fcbell
