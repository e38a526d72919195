#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "fcbell/scenario.hpp"

namespace fcbell {

/// The m x k table f(s, r) that fully characterizes a symmetric
/// full-correlation expression. Row index is the settings-sum residue s,
/// column index the shifted outcome-sum residue r.
///
/// Integer-valued tables (Value = std::int64_t) keep every downstream
/// strategy value and combinatorial bound exact; general tables use double.
template <class Value>
class CoefficientFunction {
  static_assert(std::is_arithmetic_v<Value>);

 public:
  CoefficientFunction(int settings, int outcomes, std::vector<Value> table)
      : settings_(settings), outcomes_(outcomes), table_(std::move(table)) {
    if (settings < 2 || outcomes < 2) {
      throw invalid_scenario("coefficient function requires settings >= 2 and outcomes >= 2");
    }
    if (table_.size() != static_cast<std::size_t>(settings) * static_cast<std::size_t>(outcomes)) {
      throw dimension_mismatch("coefficient table must have settings*outcomes entries");
    }
    if constexpr (std::is_floating_point_v<Value>) {
      for (Value v : table_) {
        if (!std::isfinite(v)) throw validation_error("coefficient table entry is not finite");
      }
    }
  }

  int settings() const { return settings_; }
  int outcomes() const { return outcomes_; }

  Value at(int s, int r) const {
    if (s < 0 || s >= settings_ || r < 0 || r >= outcomes_) {
      throw index_error("coefficient index out of range");
    }
    return table_[static_cast<std::size_t>(s) * outcomes_ + static_cast<std::size_t>(r)];
  }

  /// Unchecked access for hot loops.
  Value operator()(int s, int r) const {
    return table_[static_cast<std::size_t>(s) * outcomes_ + static_cast<std::size_t>(r)];
  }

  std::span<const Value> table() const { return table_; }

  /// True when f(s, r) = g(s) * r, i.e. the column r = 0 vanishes and the
  /// remaining columns are r-multiples of column 1. For k = 2 this reduces
  /// to "column 0 is zero".
  bool is_product_form() const {
    for (int s = 0; s < settings_; ++s) {
      if ((*this)(s, 0) != Value{0}) return false;
      for (int r = 2; r < outcomes_; ++r) {
        if ((*this)(s, r) != static_cast<Value>(r) * (*this)(s, 1)) return false;
      }
    }
    return true;
  }

  /// The vector g(s) of a product-form table.
  std::vector<Value> product_weights() const {
    if (!is_product_form()) throw precondition_error("coefficient function is not of product form");
    std::vector<Value> g(static_cast<std::size_t>(settings_));
    for (int s = 0; s < settings_; ++s) g[static_cast<std::size_t>(s)] = (*this)(s, 1);
    return g;
  }

  friend bool operator==(const CoefficientFunction&, const CoefficientFunction&) = default;

 private:
  int settings_;
  int outcomes_;
  std::vector<Value> table_;
};

/// f_I: f(0, r) = r, f(1, r) = [-r]_k, zero elsewhere. This is the table
/// behind the unified expression that ties the chained, CGLMP, BKP and
/// Svetlichny-type families together.
inline CoefficientFunction<std::int64_t> identity_coefficients(int settings, int outcomes) {
  std::vector<std::int64_t> table(static_cast<std::size_t>(settings) * outcomes, 0);
  for (int r = 0; r < outcomes; ++r) {
    table[static_cast<std::size_t>(r)] = r;
    table[static_cast<std::size_t>(outcomes) + r] = detail::imod(-r, outcomes);
  }
  return CoefficientFunction<std::int64_t>(settings, outcomes, std::move(table));
}

/// MABK-type table: f(s, r) = delta_{s,0} * r.
inline CoefficientFunction<std::int64_t> mabk_coefficients(int settings, int outcomes) {
  std::vector<std::int64_t> table(static_cast<std::size_t>(settings) * outcomes, 0);
  for (int r = 0; r < outcomes; ++r) table[static_cast<std::size_t>(r)] = r;
  return CoefficientFunction<std::int64_t>(settings, outcomes, std::move(table));
}

/// Product form f(s, r) = g(s) * r.
template <class Value>
CoefficientFunction<Value> product_coefficients(std::span<const Value> g, int outcomes) {
  const int settings = static_cast<int>(g.size());
  if (settings < 2) throw invalid_scenario("product form requires at least 2 settings");
  std::vector<Value> table(static_cast<std::size_t>(settings) * outcomes, Value{0});
  for (int s = 0; s < settings; ++s) {
    for (int r = 0; r < outcomes; ++r) {
      table[static_cast<std::size_t>(s) * outcomes + r] = g[static_cast<std::size_t>(s)] * static_cast<Value>(r);
    }
  }
  return CoefficientFunction<Value>(settings, outcomes, std::move(table));
}

template <class Value>
CoefficientFunction<Value> product_coefficients(const std::vector<Value>& g, int outcomes) {
  return product_coefficients(std::span<const Value>(g), outcomes);
}

/// Cosine family: f(s, r) = cos((s - delta) * pi / m) * r, any real delta.
inline CoefficientFunction<double> cosine_coefficients(int settings, int outcomes, double delta) {
  std::vector<double> g(static_cast<std::size_t>(settings));
  for (int s = 0; s < settings; ++s) {
    g[static_cast<std::size_t>(s)] = std::cos((s - delta) * std::numbers::pi / settings);
  }
  return product_coefficients<double>(g, outcomes);
}

}  // namespace fcbell
