#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "fcbell/expression.hpp"
#include "fcbell/scenario.hpp"

namespace fcbell {

inline constexpr double kDefaultExpandGuard = 1e7;

/// Fully materialized coefficient tensor: one entry per (settings vector,
/// outcome-sum residue) pair, m^n * k entries in total. Used where
/// entry-by-entry comparison or fast repeated lookup is needed; the lazy
/// BellExpression form stays the canonical representation.
template <class Value>
class ExpandedTensor {
 public:
  ExpandedTensor(Scenario scenario, std::vector<Value> values)
      : scenario_(scenario), values_(std::move(values)) {
    const std::uint64_t expected = scenario_.settings_vector_count() * scenario_.outcomes;
    if (values_.size() != expected) {
      throw dimension_mismatch("tensor storage size does not match scenario");
    }
  }

  const Scenario& scenario() const { return scenario_; }

  Value at(std::uint64_t settings_index, int residue) const {
    return values_[settings_index * scenario_.outcomes + static_cast<std::uint64_t>(residue)];
  }

  Value& at(std::uint64_t settings_index, int residue) {
    return values_[settings_index * scenario_.outcomes + static_cast<std::uint64_t>(residue)];
  }

  Value entry(std::span<const int> settings, int residue) const {
    if (static_cast<int>(settings.size()) != scenario_.parties) {
      throw dimension_mismatch("settings vector length does not match party count");
    }
    for (int s : settings) {
      if (s < 0 || s >= scenario_.settings) throw index_error("setting label out of range");
    }
    if (residue < 0 || residue >= scenario_.outcomes) throw index_error("outcome residue out of range");
    return at(detail::settings_index(scenario_, settings), residue);
  }

  std::span<const Value> values() const { return values_; }

  std::uint64_t entry_count() const { return values_.size(); }

  std::uint64_t nonzero_count() const {
    return static_cast<std::uint64_t>(
        std::count_if(values_.begin(), values_.end(), [](Value v) { return v != Value{0}; }));
  }

  Value sum() const {
    Value total{0};
    for (Value v : values_) total += v;
    return total;
  }

  friend bool operator==(const ExpandedTensor&, const ExpandedTensor&) = default;

 private:
  Scenario scenario_;
  std::vector<Value> values_;
};

/// Largest absolute entry difference; tensors must share a scenario.
template <class Value>
double max_abs_difference(const ExpandedTensor<Value>& a, const ExpandedTensor<Value>& b) {
  if (a.scenario() != b.scenario()) throw dimension_mismatch("tensor scenarios differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a.values()[i]) -
                                     static_cast<double>(b.values()[i])));
  }
  return worst;
}

/// Materializes the full tensor. Guarded: scenarios whose tensor would
/// exceed `max_entries` entries are rejected rather than truncated.
template <class Value>
ExpandedTensor<Value> expand(const BellExpression<Value>& expr,
                             double max_entries = kDefaultExpandGuard) {
  const Scenario& sc = expr.scenario();
  const double estimate = detail::pow_estimate(sc.settings, sc.parties) * sc.outcomes;
  if (estimate > max_entries) {
    throw guard_exceeded("tensor expansion would need " + std::to_string(estimate) +
                             " entries, guard is " + std::to_string(max_entries),
                         estimate, max_entries);
  }
  const std::uint64_t count = sc.settings_vector_count();
  std::vector<Value> values(count * sc.outcomes);
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t idx = 0;
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    for (int r = 0; r < sc.outcomes; ++r) {
      values[idx * sc.outcomes + r] = expr.coefficient_for_sum(sum, r);
    }
    ++idx;
  } while (detail::next_tuple(settings, sc.settings));
  return ExpandedTensor<Value>(sc, std::move(values));
}

/// JSON form: a list of {"s": [s_1,...,s_n], "r": residue, "c": coefficient}.
template <class Value>
nlohmann::json tensor_to_json(const ExpandedTensor<Value>& tensor) {
  const Scenario& sc = tensor.scenario();
  nlohmann::json entries = nlohmann::json::array();
  std::vector<int> settings;
  for (std::uint64_t idx = 0; idx < sc.settings_vector_count(); ++idx) {
    detail::index_to_settings(sc, idx, settings);
    for (int r = 0; r < sc.outcomes; ++r) {
      entries.push_back({{"s", settings}, {"r", r}, {"c", tensor.at(idx, r)}});
    }
  }
  return entries;
}

/// JSON form of an expression: {"n":..., "m":..., "k":..., "f": [[...],...]} with
/// row index s and column index r.
template <class Value>
nlohmann::json expression_to_json(const BellExpression<Value>& expr) {
  const Scenario& sc = expr.scenario();
  nlohmann::json rows = nlohmann::json::array();
  for (int s = 0; s < sc.settings; ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (int r = 0; r < sc.outcomes; ++r) row.push_back(expr.coefficients()(s, r));
    rows.push_back(std::move(row));
  }
  return {{"n", sc.parties}, {"m", sc.settings}, {"k", sc.outcomes}, {"f", std::move(rows)}};
}

template <class Value>
BellExpression<Value> expression_from_json(const nlohmann::json& doc) {
  for (const char* key : {"n", "m", "k", "f"}) {
    if (!doc.contains(key)) throw schema_error(std::string("expression document missing key \"") + key + "\"");
  }
  const Scenario sc(doc.at("n").get<int>(), doc.at("m").get<int>(), doc.at("k").get<int>());
  const auto& rows = doc.at("f");
  if (!rows.is_array() || static_cast<int>(rows.size()) != sc.settings) {
    throw schema_error("key \"f\" must be an array of m rows");
  }
  std::vector<Value> table;
  table.reserve(static_cast<std::size_t>(sc.settings) * sc.outcomes);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != sc.outcomes) {
      throw schema_error("each row of \"f\" must have k entries");
    }
    for (const auto& v : row) table.push_back(v.get<Value>());
  }
  return BellExpression<Value>(sc, CoefficientFunction<Value>(sc.settings, sc.outcomes, std::move(table)));
}

}  // namespace fcbell
