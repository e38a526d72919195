#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fcbell/behavior.hpp"
#include "fcbell/expression.hpp"
#include "fcbell/scenario.hpp"

namespace fcbell {

/// Binary-outcome product-form expressions rewritten over the standard
/// correlators E = P(even sum) - P(odd sum):
///
///   value = constant + sum over settings vectors of weight * E,
///
/// with constant = m^(n-1)/2 * sum_s g(s) and
/// weight(s-vector) = -1/2 g([S]_m) (-1)^floor(S/m), S the settings sum.
struct CorrelatorForm {
  Scenario scenario;
  double constant = 0.0;
  std::vector<double> weights;  // indexed by flat settings index

  double weight(std::span<const int> settings) const {
    return weights[detail::settings_index(scenario, settings)];
  }
};

template <class Value>
CorrelatorForm correlator_form(const BellExpression<Value>& expr) {
  const Scenario& sc = expr.scenario();
  if (sc.outcomes != 2) {
    throw precondition_error("correlator form requires binary outcomes");
  }
  if (!expr.coefficients().is_product_form()) {
    throw precondition_error("correlator form requires a product-form coefficient table");
  }
  const auto g = expr.coefficients().product_weights();

  CorrelatorForm form;
  form.scenario = sc;
  double g_sum = 0.0;
  for (auto v : g) g_sum += static_cast<double>(v);
  form.constant = 0.5 * detail::pow_estimate(sc.settings, sc.parties - 1) * g_sum;

  form.weights.resize(sc.settings_vector_count());
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    const double sign = (detail::floordiv(sum, sc.settings) % 2 == 0) ? 1.0 : -1.0;
    form.weights[v] = -0.5 * static_cast<double>(g[static_cast<std::size_t>(detail::imod(sum, sc.settings))]) * sign;
    ++v;
  } while (detail::next_tuple(settings, sc.settings));
  return form;
}

/// Value of the form on a correlator table (flat settings index order).
inline double correlator_value(const CorrelatorForm& form, std::span<const double> correlators) {
  if (correlators.size() != form.weights.size()) {
    throw dimension_mismatch("correlator table size does not match the scenario");
  }
  double value = form.constant;
  for (std::size_t i = 0; i < correlators.size(); ++i) value += form.weights[i] * correlators[i];
  return value;
}

/// Correlators of a binary-outcome behavior, E = P(0) - P(1) per settings vector.
inline std::vector<double> correlators_of(const Behavior& behavior) {
  const Scenario& sc = behavior.scenario();
  if (sc.outcomes != 2) throw precondition_error("correlators require binary outcomes");
  std::vector<double> correlators(sc.settings_vector_count());
  for (std::uint64_t v = 0; v < correlators.size(); ++v) {
    correlators[v] = behavior.reduced_at(v, 0) - behavior.reduced_at(v, 1);
  }
  return correlators;
}

}  // namespace fcbell
