#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcbell/expression.hpp"
#include "fcbell/report.hpp"
#include "fcbell/scenario.hpp"
#include "fcbell/strategy.hpp"

namespace fcbell {

inline constexpr double kBehaviorTolerance = 1e-9;

/// A behavior: conditional distributions of the outcome-sum residue given
/// each settings vector. Full-correlation expressions need nothing more, so
/// the reduced table is canonical; a full joint-outcome table is optional
/// and only consulted for no-signaling checks.
class Behavior {
 public:
  Behavior(Scenario scenario, std::vector<double> reduced,
           std::optional<std::vector<double>> full = std::nullopt)
      : scenario_(scenario), reduced_(std::move(reduced)), full_(std::move(full)) {
    const std::uint64_t vectors = scenario_.settings_vector_count();
    if (reduced_.size() != vectors * scenario_.outcomes) {
      throw dimension_mismatch("reduced table must have m^n * k entries");
    }
    validate_distributions();
    if (full_) {
      if (full_->size() != vectors * scenario_.outcome_tuple_count()) {
        throw dimension_mismatch("full table must have m^n * k^n entries");
      }
      validate_reduction();
    }
  }

  const Scenario& scenario() const { return scenario_; }
  bool has_full_table() const { return full_.has_value(); }

  double reduced_at(std::uint64_t settings_index, int residue) const {
    return reduced_[settings_index * scenario_.outcomes + static_cast<std::uint64_t>(residue)];
  }

  double full_at(std::uint64_t settings_index, std::uint64_t outcome_index) const {
    return (*full_)[settings_index * scenario_.outcome_tuple_count() + outcome_index];
  }

  std::span<const double> reduced() const { return reduced_; }

 private:
  void validate_distributions() const {
    std::vector<int> settings;
    for (std::uint64_t v = 0; v < scenario_.settings_vector_count(); ++v) {
      double sum = 0.0;
      for (int r = 0; r < scenario_.outcomes; ++r) {
        const double p = reduced_at(v, r);
        if (!(p >= -kBehaviorTolerance)) {
          detail::index_to_settings(scenario_, v, settings);
          throw validation_error("negative probability at settings " + detail::settings_key(settings));
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kBehaviorTolerance) {
        detail::index_to_settings(scenario_, v, settings);
        throw validation_error("distribution at settings " + detail::settings_key(settings) +
                               " sums to " + std::to_string(sum));
      }
    }
  }

  void validate_reduction() const {
    const std::uint64_t tuples = scenario_.outcome_tuple_count();
    std::vector<int> settings;
    for (std::uint64_t v = 0; v < scenario_.settings_vector_count(); ++v) {
      std::vector<double> folded(static_cast<std::size_t>(scenario_.outcomes), 0.0);
      for (std::uint64_t t = 0; t < tuples; ++t) {
        if (!(full_at(v, t) >= -kBehaviorTolerance)) {
          detail::index_to_settings(scenario_, v, settings);
          throw validation_error("negative full-table probability at settings " +
                                 detail::settings_key(settings));
        }
        std::uint64_t rest = t;
        long long total = 0;
        for (int i = scenario_.parties - 1; i >= 0; --i) {
          total += static_cast<long long>(rest % scenario_.outcomes);
          rest /= scenario_.outcomes;
        }
        folded[static_cast<std::size_t>(detail::imod(total, scenario_.outcomes))] += full_at(v, t);
      }
      for (int r = 0; r < scenario_.outcomes; ++r) {
        if (std::abs(folded[static_cast<std::size_t>(r)] - reduced_at(v, r)) > kBehaviorTolerance) {
          detail::index_to_settings(scenario_, v, settings);
          throw validation_error("full table does not reduce to the reduced table at settings " +
                                 detail::settings_key(settings));
        }
      }
    }
  }

  Scenario scenario_;
  std::vector<double> reduced_;
  std::optional<std::vector<double>> full_;
};

/// Every conditional distribution uniform over residues.
inline Behavior uniform_behavior(const Scenario& sc) {
  std::vector<double> reduced(sc.settings_vector_count() * sc.outcomes, 1.0 / sc.outcomes);
  std::vector<double> full(sc.settings_vector_count() * sc.outcome_tuple_count(),
                           1.0 / static_cast<double>(sc.outcome_tuple_count()));
  return Behavior(sc, std::move(reduced), std::move(full));
}

/// The PR box for (2,2,2): outcome-sum residue equals the settings product
/// with certainty. A no-signaling but non-quantum test vector.
inline Behavior pr_box_behavior() {
  const Scenario sc(2, 2, 2);
  std::vector<double> reduced(sc.settings_vector_count() * sc.outcomes, 0.0);
  std::vector<double> full(sc.settings_vector_count() * sc.outcome_tuple_count(), 0.0);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      const std::uint64_t v = static_cast<std::uint64_t>(s1) * 2 + s2;
      const int target = s1 * s2;
      reduced[v * 2 + static_cast<std::uint64_t>(target)] = 1.0;
      // Uniform over the two outcome pairs with the required parity.
      for (int r1 = 0; r1 < 2; ++r1) {
        const int r2 = (target - r1 + 2) % 2;
        full[v * 4 + static_cast<std::uint64_t>(r1 * 2 + r2)] = 0.5;
      }
    }
  }
  return Behavior(sc, std::move(reduced), std::move(full));
}

/// Deterministic-strategy behavior, with full table.
inline Behavior behavior_from_strategy(const Scenario& sc, const DeterministicStrategy& strat) {
  validate_strategy(sc, strat);
  std::vector<double> reduced(sc.settings_vector_count() * sc.outcomes, 0.0);
  std::vector<double> full(sc.settings_vector_count() * sc.outcome_tuple_count(), 0.0);
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    std::uint64_t tuple = 0;
    for (int i = 0; i < sc.parties; ++i) {
      tuple = tuple * static_cast<std::uint64_t>(sc.outcomes) +
              static_cast<std::uint64_t>(strat.responses[static_cast<std::size_t>(i)]
                                                        [static_cast<std::size_t>(settings[static_cast<std::size_t>(i)])]);
    }
    full[v * sc.outcome_tuple_count() + tuple] = 1.0;
    reduced[v * sc.outcomes + static_cast<std::uint64_t>(strategy_residue(sc, strat, settings))] = 1.0;
    ++v;
  } while (detail::next_tuple(settings, sc.settings));
  return Behavior(sc, std::move(reduced), std::move(full));
}

/// Random behavior: an independent point of the probability simplex per
/// settings vector. Any reduced table extends to a no-signaling behavior by
/// spreading each residue's weight uniformly over its outcome tuples, which
/// is what `with_full` materializes.
inline Behavior random_behavior(const Scenario& sc, std::mt19937_64& rng, bool with_full = false) {
  std::exponential_distribution<double> expo(1.0);
  const std::uint64_t vectors = sc.settings_vector_count();
  std::vector<double> reduced(vectors * sc.outcomes);
  for (std::uint64_t v = 0; v < vectors; ++v) {
    double sum = 0.0;
    for (int r = 0; r < sc.outcomes; ++r) {
      const double w = expo(rng);
      reduced[v * sc.outcomes + static_cast<std::uint64_t>(r)] = w;
      sum += w;
    }
    for (int r = 0; r < sc.outcomes; ++r) reduced[v * sc.outcomes + static_cast<std::uint64_t>(r)] /= sum;
  }
  std::optional<std::vector<double>> full;
  if (with_full) {
    const std::uint64_t tuples = sc.outcome_tuple_count();
    const double fiber = static_cast<double>(tuples) / sc.outcomes;  // tuples per residue
    full.emplace(vectors * tuples);
    for (std::uint64_t v = 0; v < vectors; ++v) {
      for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rest = t;
        long long total = 0;
        while (rest) {
          total += static_cast<long long>(rest % sc.outcomes);
          rest /= sc.outcomes;
        }
        (*full)[v * tuples + t] =
            reduced[v * sc.outcomes + static_cast<std::uint64_t>(detail::imod(total, sc.outcomes))] / fiber;
      }
    }
  }
  return Behavior(sc, std::move(reduced), std::move(full));
}

/// Parses the behavior document schema:
/// {"n":..,"m":..,"k":..,"reduced":{"s1,...,sn":[p0,...,p_{k-1}],...},"full":{...}}.
inline Behavior ingest(const nlohmann::json& doc) {
  for (const char* key : {"n", "m", "k", "reduced"}) {
    if (!doc.contains(key)) throw schema_error(std::string("behavior document missing key \"") + key + "\"");
  }
  const Scenario sc(doc.at("n").get<int>(), doc.at("m").get<int>(), doc.at("k").get<int>());
  const std::uint64_t vectors = sc.settings_vector_count();
  std::vector<double> reduced(vectors * sc.outcomes, 0.0);
  std::vector<int> settings;
  const auto& rows = doc.at("reduced");
  if (!rows.is_object()) throw schema_error("key \"reduced\" must be an object keyed by settings");
  for (std::uint64_t v = 0; v < vectors; ++v) {
    detail::index_to_settings(sc, v, settings);
    const std::string key = detail::settings_key(settings);
    if (!rows.contains(key)) throw schema_error("reduced table missing settings key \"" + key + "\"");
    const auto& row = rows.at(key);
    if (!row.is_array() || static_cast<int>(row.size()) != sc.outcomes) {
      throw schema_error("reduced row \"" + key + "\" must have k entries");
    }
    for (int r = 0; r < sc.outcomes; ++r) {
      reduced[v * sc.outcomes + static_cast<std::uint64_t>(r)] = row.at(static_cast<std::size_t>(r)).get<double>();
    }
  }
  std::optional<std::vector<double>> full;
  if (doc.contains("full")) {
    const auto& frows = doc.at("full");
    if (!frows.is_object()) throw schema_error("key \"full\" must be an object keyed by settings");
    const std::uint64_t tuples = sc.outcome_tuple_count();
    full.emplace(vectors * tuples, 0.0);
    for (std::uint64_t v = 0; v < vectors; ++v) {
      detail::index_to_settings(sc, v, settings);
      const std::string key = detail::settings_key(settings);
      if (!frows.contains(key)) throw schema_error("full table missing settings key \"" + key + "\"");
      const auto& row = frows.at(key);
      if (!row.is_array() || row.size() != tuples) {
        throw schema_error("full row \"" + key + "\" must have k^n entries");
      }
      for (std::uint64_t t = 0; t < tuples; ++t) {
        (*full)[v * tuples + t] = row.at(static_cast<std::size_t>(t)).get<double>();
      }
    }
  }
  return Behavior(sc, std::move(reduced), std::move(full));
}

inline nlohmann::json behavior_to_json(const Behavior& behavior) {
  const Scenario& sc = behavior.scenario();
  nlohmann::json reduced = nlohmann::json::object();
  nlohmann::json full = nlohmann::json::object();
  std::vector<int> settings;
  for (std::uint64_t v = 0; v < sc.settings_vector_count(); ++v) {
    detail::index_to_settings(sc, v, settings);
    const std::string key = detail::settings_key(settings);
    nlohmann::json row = nlohmann::json::array();
    for (int r = 0; r < sc.outcomes; ++r) row.push_back(behavior.reduced_at(v, r));
    reduced[key] = std::move(row);
    if (behavior.has_full_table()) {
      nlohmann::json frow = nlohmann::json::array();
      for (std::uint64_t t = 0; t < sc.outcome_tuple_count(); ++t) frow.push_back(behavior.full_at(v, t));
      full[key] = std::move(frow);
    }
  }
  nlohmann::json doc = {{"n", sc.parties}, {"m", sc.settings}, {"k", sc.outcomes}, {"reduced", std::move(reduced)}};
  if (behavior.has_full_table()) doc["full"] = std::move(full);
  return doc;
}

/// Checks that every group of parties' joint outcome marginal, given its own
/// settings, is independent of the remaining parties' settings. Requires the
/// full table.
inline bool check_no_signaling(const Behavior& behavior, double tolerance = kBehaviorTolerance) {
  if (!behavior.has_full_table()) {
    throw precondition_error("no-signaling check requires the full outcome table");
  }
  const Scenario& sc = behavior.scenario();
  const int n = sc.parties;
  const std::uint64_t vectors = sc.settings_vector_count();
  const std::uint64_t tuples = sc.outcome_tuple_count();

  std::vector<int> settings(static_cast<std::size_t>(n));
  std::vector<int> outcomes(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
    // Marginal of the parties in `mask`, keyed by (their settings, their outcomes),
    // computed per full settings vector; must agree across complements.
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) members.push_back(i);
    }
    const std::uint64_t member_settings = detail::upow(static_cast<std::uint64_t>(sc.settings),
                                                       static_cast<int>(members.size()));
    const std::uint64_t member_outcomes = detail::upow(static_cast<std::uint64_t>(sc.outcomes),
                                                       static_cast<int>(members.size()));
    std::vector<double> reference(member_settings * member_outcomes, -1.0);
    for (std::uint64_t v = 0; v < vectors; ++v) {
      detail::index_to_settings(sc, v, settings);
      std::uint64_t skey = 0;
      for (int p : members) skey = skey * sc.settings + static_cast<std::uint64_t>(settings[static_cast<std::size_t>(p)]);
      std::vector<double> marginal(member_outcomes, 0.0);
      for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rest = t;
        for (int i = n - 1; i >= 0; --i) {
          outcomes[static_cast<std::size_t>(i)] = static_cast<int>(rest % sc.outcomes);
          rest /= sc.outcomes;
        }
        std::uint64_t okey = 0;
        for (int p : members) okey = okey * sc.outcomes + static_cast<std::uint64_t>(outcomes[static_cast<std::size_t>(p)]);
        marginal[okey] += behavior.full_at(v, t);
      }
      for (std::uint64_t o = 0; o < member_outcomes; ++o) {
        double& ref = reference[skey * member_outcomes + o];
        if (ref < 0.0) {
          ref = marginal[o];
        } else if (std::abs(ref - marginal[o]) > tolerance) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Expression value on a behavior: sum over settings vectors and residues of
/// coefficient times probability.
template <class Value>
double evaluate(const BellExpression<Value>& expr, const Behavior& behavior) {
  if (expr.scenario() != behavior.scenario()) {
    throw dimension_mismatch("expression and behavior scenarios differ");
  }
  const Scenario& sc = expr.scenario();
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  double total = 0.0;
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    for (int r = 0; r < sc.outcomes; ++r) {
      total += static_cast<double>(expr.coefficient_for_sum(sum, r)) * behavior.reduced_at(v, r);
    }
    ++v;
  } while (detail::next_tuple(settings, sc.settings));
  return total;
}

/// Per-bound verdicts for a behavior. Bounds are lower bounds, so violation
/// means the value dips below the bound by more than the tolerance.
struct ClassificationReport {
  struct Verdict {
    BoundKind kind{};
    double bound{};
    BoundMethod method{};
    bool violated{};
    double margin{};  // value - bound
  };
  double value{};
  std::vector<Verdict> verdicts;
};

template <class Value>
ClassificationReport classify(const BellExpression<Value>& expr, const Behavior& behavior,
                              const std::vector<BoundValue>& bounds,
                              double tolerance = kBehaviorTolerance) {
  ClassificationReport report;
  report.value = evaluate(expr, behavior);
  for (const BoundValue& bound : bounds) {
    ClassificationReport::Verdict verdict;
    verdict.kind = bound.kind;
    verdict.bound = bound.value;
    verdict.method = bound.method;
    verdict.margin = report.value - bound.value;
    verdict.violated = report.value < bound.value - tolerance;
    report.verdicts.push_back(verdict);
  }
  return report;
}

inline nlohmann::json classification_to_json(const ClassificationReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"kind", to_string(v.kind)},
                        {"bound", v.bound},
                        {"method", to_string(v.method)},
                        {"violated", v.violated},
                        {"margin", v.margin}});
  }
  return {{"value", report.value}, {"verdicts", std::move(verdicts)}};
}

}  // namespace fcbell
