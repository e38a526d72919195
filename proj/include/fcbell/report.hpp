#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "fcbell/strategy.hpp"

namespace fcbell {

enum class BoundKind { local, svetlichny, g_group, biseparable, tsirelson };

enum class BoundMethod { combinatorial_exact, closed_form, quantum_achieved_upper };

inline std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::local: return "local";
    case BoundKind::svetlichny: return "svetlichny";
    case BoundKind::g_group: return "g-group";
    case BoundKind::biseparable: return "biseparable";
    case BoundKind::tsirelson: return "tsirelson";
  }
  return "?";
}

inline std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::combinatorial_exact: return "combinatorial-exact";
    case BoundMethod::closed_form: return "closed-form";
    case BoundMethod::quantum_achieved_upper: return "quantum-achieved-upper";
  }
  return "?";
}

using Witness = std::variant<DeterministicStrategy, GroupedStrategy>;

/// A computed bound together with its provenance. Values produced by exact
/// enumeration of integer coefficient tables are exact integers.
template <class Value>
struct BoundReport {
  BoundKind kind{};
  Value value{};
  BoundMethod method{};
  std::optional<Witness> witness;

  double value_as_double() const { return static_cast<double>(value); }
};

/// Kind/value/method triple used where witnesses are irrelevant
/// (classification, catalogues, CLI tables).
struct BoundValue {
  BoundKind kind{};
  double value{};
  BoundMethod method{};
};

template <class Value>
BoundValue as_bound_value(const BoundReport<Value>& report) {
  return BoundValue{report.kind, static_cast<double>(report.value), report.method};
}

template <class Value>
nlohmann::json bound_report_to_json(const BoundReport<Value>& report) {
  nlohmann::json doc = {{"kind", to_string(report.kind)},
                        {"value", report.value},
                        {"method", to_string(report.method)}};
  if (report.witness) {
    doc["witness"] = std::visit([](const auto& w) { return strategy_to_json(w); }, *report.witness);
  }
  return doc;
}

inline nlohmann::json bound_value_to_json(const BoundValue& bound) {
  return {{"kind", to_string(bound.kind)}, {"value", bound.value}, {"method", to_string(bound.method)}};
}

}  // namespace fcbell
