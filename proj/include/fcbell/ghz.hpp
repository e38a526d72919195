#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <json.hpp>

#include "fcbell/analytic.hpp"
#include "fcbell/behavior.hpp"
#include "fcbell/correlator.hpp"
#include "fcbell/expression.hpp"
#include "fcbell/scenario.hpp"

namespace fcbell {

/// Equatorial phase settings for the GHZ model: party i measures with phase
/// phi[i][s] for setting s, and the n-party correlator is the cosine of the
/// phase sum.
struct PhaseAssignment {
  int parties = 0;
  int settings = 0;
  std::vector<double> phases;  // parties x settings, row-major

  PhaseAssignment() = default;
  PhaseAssignment(int parties_, int settings_, std::vector<double> phases_)
      : parties(parties_), settings(settings_), phases(std::move(phases_)) {
    if (phases.size() != static_cast<std::size_t>(parties) * static_cast<std::size_t>(settings)) {
      throw dimension_mismatch("phase matrix must have parties x settings entries");
    }
    for (double p : phases) {
      if (!std::isfinite(p)) throw validation_error("phase entries must be finite");
    }
  }

  double at(int party, int setting) const {
    return phases[static_cast<std::size_t>(party) * settings + static_cast<std::size_t>(setting)];
  }
  double& at(int party, int setting) {
    return phases[static_cast<std::size_t>(party) * settings + static_cast<std::size_t>(setting)];
  }
};

/// E(settings vector) = cos(sum of party phases), flat settings index order.
inline std::vector<double> ghz_correlators(const PhaseAssignment& angles) {
  const Scenario sc(angles.parties, angles.settings, 2);
  std::vector<double> correlators(sc.settings_vector_count());
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    double phase = 0.0;
    for (int i = 0; i < sc.parties; ++i) phase += angles.at(i, settings[static_cast<std::size_t>(i)]);
    correlators[v] = std::cos(phase);
    ++v;
  } while (detail::next_tuple(settings, sc.settings));
  return correlators;
}

/// Behavior with P(residue r) = (1 + (-1)^r E)/2 per settings vector; the
/// attached full table spreads each parity fiber uniformly, which keeps the
/// behavior no-signaling (all strict-subset marginals are uniform).
inline Behavior behavior_from_correlators(const Scenario& sc, std::span<const double> correlators,
                                          bool with_full = true) {
  if (sc.outcomes != 2) throw precondition_error("correlator behaviors require binary outcomes");
  if (correlators.size() != sc.settings_vector_count()) {
    throw dimension_mismatch("correlator table size does not match the scenario");
  }
  for (double e : correlators) {
    if (!(std::abs(e) <= 1.0 + 1e-12)) {
      throw validation_error("correlator magnitude exceeds 1");
    }
  }
  std::vector<double> reduced(correlators.size() * 2);
  for (std::uint64_t v = 0; v < correlators.size(); ++v) {
    reduced[v * 2 + 0] = 0.5 * (1.0 + correlators[v]);
    reduced[v * 2 + 1] = 0.5 * (1.0 - correlators[v]);
  }
  std::optional<std::vector<double>> full;
  if (with_full) {
    const std::uint64_t tuples = sc.outcome_tuple_count();
    full.emplace(correlators.size() * tuples);
    for (std::uint64_t v = 0; v < correlators.size(); ++v) {
      for (std::uint64_t t = 0; t < tuples; ++t) {
        const int parity = std::popcount(t) % 2;
        (*full)[v * tuples + t] =
            (1.0 + (parity == 0 ? 1.0 : -1.0) * correlators[v]) / static_cast<double>(tuples);
      }
    }
  }
  return Behavior(sc, std::move(reduced), std::move(full));
}

struct QuantumValueReport {
  double value = 0.0;
  PhaseAssignment angles;
  double target_bound = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();  // value - target_bound
};

namespace detail {

/// Closed-form quantum bound when one is built in: the binary-outcome
/// unified expression. NaN otherwise.
template <class Value>
double default_target_bound(const BellExpression<Value>& expr) {
  const Scenario& sc = expr.scenario();
  if (sc.outcomes == 2 && has_identity_coefficients(expr.coefficients())) {
    return tsirelson_bound_binary(sc.parties, sc.settings);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double wrap_angle(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0) w += two_pi;
  return w;
}

}  // namespace detail

/// Expression value of the GHZ model at the given phases.
template <class Value>
QuantumValueReport quantum_value(const BellExpression<Value>& expr, const PhaseAssignment& angles,
                                 double target_bound = std::numeric_limits<double>::quiet_NaN()) {
  const Scenario& sc = expr.scenario();
  if (angles.parties != sc.parties || angles.settings != sc.settings) {
    throw dimension_mismatch("phase matrix dimensions do not match scenario");
  }
  const CorrelatorForm form = correlator_form(expr);
  const auto correlators = ghz_correlators(angles);
  QuantumValueReport report;
  report.value = correlator_value(form, correlators);
  report.angles = angles;
  report.target_bound = std::isnan(target_bound) ? detail::default_target_bound(expr) : target_bound;
  report.gap = report.value - report.target_bound;
  return report;
}

/// d value / d phi[i][s]: the phase only enters through cosines of phase
/// sums, so each partial is minus the weighted sine sum over the settings
/// vectors that use (i, s).
template <class Value>
std::vector<double> quantum_value_gradient(const BellExpression<Value>& expr,
                                           const PhaseAssignment& angles) {
  const Scenario& sc = expr.scenario();
  if (angles.parties != sc.parties || angles.settings != sc.settings) {
    throw dimension_mismatch("phase matrix dimensions do not match scenario");
  }
  const CorrelatorForm form = correlator_form(expr);
  std::vector<double> gradient(static_cast<std::size_t>(sc.parties) * sc.settings, 0.0);
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    double phase = 0.0;
    for (int i = 0; i < sc.parties; ++i) phase += angles.at(i, settings[static_cast<std::size_t>(i)]);
    const double d = -form.weights[v] * std::sin(phase);
    for (int i = 0; i < sc.parties; ++i) {
      gradient[static_cast<std::size_t>(i) * sc.settings +
               static_cast<std::size_t>(settings[static_cast<std::size_t>(i)])] += d;
    }
    ++v;
  } while (detail::next_tuple(settings, sc.settings));
  return gradient;
}

struct OptimizeOptions {
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_sweeps = 500;
  double tolerance = 1e-12;
  double target_bound = std::numeric_limits<double>::quiet_NaN();
};

/// Multi-restart minimization of the GHZ value over phases. Each coordinate
/// enters the objective as R cos(phi + psi) + rest, so a sweep sets every
/// coordinate to its exact per-coordinate minimizer; sweeps repeat until the
/// value stops improving. Deterministic for a fixed seed: restarts draw from
/// one seeded generator and ties keep the earliest restart.
///
/// restarts = 0 evaluates a single random initial assignment without
/// descending, which still respects every valid quantum bound.
template <class Value>
QuantumValueReport optimize_phases(const BellExpression<Value>& expr,
                                   const OptimizeOptions& options = {}) {
  const Scenario& sc = expr.scenario();
  const CorrelatorForm form = correlator_form(expr);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);

  const std::uint64_t vectors = sc.settings_vector_count();
  // usage[i][s]: flat settings indices whose vector has s at party i.
  std::vector<std::vector<std::uint64_t>> usage(static_cast<std::size_t>(sc.parties) * sc.settings);
  {
    std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
    std::uint64_t v = 0;
    do {
      for (int i = 0; i < sc.parties; ++i) {
        usage[static_cast<std::size_t>(i) * sc.settings +
              static_cast<std::size_t>(settings[static_cast<std::size_t>(i)])].push_back(v);
      }
      ++v;
    } while (detail::next_tuple(settings, sc.settings));
  }

  auto draw = [&]() {
    std::vector<double> phases(static_cast<std::size_t>(sc.parties) * sc.settings);
    for (double& p : phases) p = uniform(rng);
    return PhaseAssignment(sc.parties, sc.settings, std::move(phases));
  };

  auto value_of = [&](const std::vector<double>& total_phase) {
    double value = form.constant;
    for (std::uint64_t v = 0; v < vectors; ++v) value += form.weights[v] * std::cos(total_phase[v]);
    return value;
  };

  bool have_best = false;
  double best_value = 0.0;
  PhaseAssignment best_angles;

  const int rounds = std::max(options.restarts, 0);
  for (int restart = 0; restart < std::max(rounds, 1); ++restart) {
    PhaseAssignment angles = draw();
    // total_phase[v] = sum of party phases under settings vector v.
    std::vector<double> total_phase(vectors, 0.0);
    {
      std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
      std::uint64_t v = 0;
      do {
        for (int i = 0; i < sc.parties; ++i) total_phase[v] += angles.at(i, settings[static_cast<std::size_t>(i)]);
        ++v;
      } while (detail::next_tuple(settings, sc.settings));
    }
    double value = value_of(total_phase);

    if (options.restarts > 0) {
      for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double before = value;
        for (int i = 0; i < sc.parties; ++i) {
          for (int s = 0; s < sc.settings; ++s) {
            const auto& indices = usage[static_cast<std::size_t>(i) * sc.settings + static_cast<std::size_t>(s)];
            const double current = angles.at(i, s);
            double cos_part = 0.0;
            double sin_part = 0.0;
            for (std::uint64_t v : indices) {
              const double rest = total_phase[v] - current;
              cos_part += form.weights[v] * std::cos(rest);
              sin_part += form.weights[v] * std::sin(rest);
            }
            const double amplitude = std::hypot(cos_part, sin_part);
            if (amplitude == 0.0) continue;
            // The coordinate's contribution is amplitude * cos(phi + psi);
            // send it to its minimum at phi = pi - psi.
            const double psi = std::atan2(sin_part, cos_part);
            const double updated = detail::wrap_angle(std::numbers::pi - psi);
            for (std::uint64_t v : indices) total_phase[v] += updated - current;
            angles.at(i, s) = updated;
          }
        }
        value = value_of(total_phase);
        if (before - value < options.tolerance) break;
      }
    }

    if (!have_best || value < best_value) {
      have_best = true;
      best_value = value;
      best_angles = angles;
    }
  }

  for (double& p : best_angles.phases) p = detail::wrap_angle(p);
  QuantumValueReport report;
  report.value = best_value;
  report.angles = std::move(best_angles);
  report.target_bound =
      std::isnan(options.target_bound) ? detail::default_target_bound(expr) : options.target_bound;
  report.gap = report.value - report.target_bound;
  return report;
}

/// Angle file schema: {"n":..., "m":..., "phi": [[...],...]}.
inline nlohmann::json angles_to_json(const PhaseAssignment& angles) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < angles.parties; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 0; s < angles.settings; ++s) row.push_back(angles.at(i, s));
    rows.push_back(std::move(row));
  }
  return {{"n", angles.parties}, {"m", angles.settings}, {"phi", std::move(rows)}};
}

inline PhaseAssignment angles_from_json(const nlohmann::json& doc) {
  for (const char* key : {"n", "m", "phi"}) {
    if (!doc.contains(key)) throw schema_error(std::string("angle document missing key \"") + key + "\"");
  }
  const int parties = doc.at("n").get<int>();
  const int settings = doc.at("m").get<int>();
  const auto& rows = doc.at("phi");
  if (!rows.is_array() || static_cast<int>(rows.size()) != parties) {
    throw schema_error("key \"phi\" must be an array of n rows");
  }
  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(parties) * static_cast<std::size_t>(settings));
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != settings) {
      throw schema_error("each row of \"phi\" must have m entries");
    }
    for (const auto& v : row) phases.push_back(v.get<double>());
  }
  return PhaseAssignment(parties, settings, std::move(phases));
}

}  // namespace fcbell
