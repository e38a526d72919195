#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "fcbell/coefficients.hpp"
#include "fcbell/report.hpp"
#include "fcbell/scenario.hpp"

namespace fcbell {

namespace detail {

inline double int_pow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline std::int64_t int_pow_i64(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace detail

/// Lifts a bipartite quantum bound for a coefficient table f to n parties:
/// every quantum behavior satisfies value >= m^(n-2) * bipartite bound.
/// The coefficient table is taken only to pin the (m, k) the bipartite bound
/// refers to; the recursion is valid for any f.
template <class Value>
double tsirelson_bound_recursive(const Scenario& scenario, const CoefficientFunction<Value>& f,
                                 double bipartite_quantum_bound) {
  if (f.settings() != scenario.settings || f.outcomes() != scenario.outcomes) {
    throw dimension_mismatch("coefficient function dimensions do not match scenario");
  }
  return detail::int_pow(scenario.settings, scenario.parties - 2) * bipartite_quantum_bound;
}

/// Quantum bound of the unified expression for binary outcomes:
/// m^(n-1) * (1 - cos(pi / 2m)).
inline double tsirelson_bound_binary(int parties, int settings) {
  if (parties < 2 || settings < 2) {
    throw invalid_scenario("tsirelson_bound_binary requires parties >= 2 and settings >= 2");
  }
  return detail::int_pow(settings, parties - 1) *
         (1.0 - std::cos(std::numbers::pi / (2.0 * settings)));
}

/// Svetlichny bound from the bipartite local bound: m^(n-2) * beta_L(2,m,k).
/// For n = 2 the Svetlichny and local bounds coincide.
template <class Value>
Value svetlichny_bound_closed(const Scenario& scenario, Value bipartite_local_bound) {
  Value factor;
  if constexpr (std::is_integral_v<Value>) {
    factor = detail::int_pow_i64(scenario.settings, scenario.parties - 2);
  } else {
    factor = detail::int_pow(scenario.settings, scenario.parties - 2);
  }
  return factor * bipartite_local_bound;
}

/// max over sign vectors A in {-1,+1}^m of |sum_x A_x w_j^x| where
/// w_j = exp(i pi (2j+1) / m). Equals eta * csc(eta pi / 2m) with
/// eta = gcd(2j+1, m); the angle eta pi / 2m lies in (0, pi/2], so the
/// cosecant never blows up.
inline double lemma1_max(int settings, int j) {
  if (settings < 2) throw invalid_scenario("lemma1_max requires settings >= 2");
  if (j < 0 || j >= settings) throw index_error("phase index j must lie in 0..m-1");
  const long long eta = std::gcd(2LL * j + 1, static_cast<long long>(settings));
  const double angle = static_cast<double>(eta) * std::numbers::pi / (2.0 * settings);
  return static_cast<double>(eta) / std::sin(angle);
}

/// Biseparable (entanglement-witness) bound of the binary-outcome
/// product-form expression with weight vector g:
///
///   1/2 m^(n-2) ( m sum_s g(s) - max_j [ eta_j csc(eta_j pi/2m) |sum_s g(s) w_j^s| ] ).
///
/// Valid lower bound for every state that is biseparable across some
/// bipartition; not necessarily tight for arbitrary g.
inline double diew_bound_binary(int parties, int settings, std::span<const double> g) {
  if (parties < 3) throw invalid_scenario("diew_bound_binary requires parties >= 3");
  if (static_cast<int>(g.size()) != settings || settings < 2) {
    throw dimension_mismatch("weight vector length must equal the settings count");
  }
  double g_sum = 0.0;
  for (double v : g) g_sum += v;
  double best = 0.0;
  for (int j = 0; j < settings; ++j) {
    std::complex<double> phase_sum{0.0, 0.0};
    for (int s = 0; s < settings; ++s) {
      const double arg = std::numbers::pi * (2.0 * j + 1.0) * s / settings;
      phase_sum += g[static_cast<std::size_t>(s)] * std::polar(1.0, arg);
    }
    best = std::max(best, lemma1_max(settings, j) * std::abs(phase_sum));
  }
  return 0.5 * detail::int_pow(settings, parties - 2) * (settings * g_sum - best);
}

inline double diew_bound_binary(int parties, int settings, const std::vector<double>& g) {
  return diew_bound_binary(parties, settings, std::span<const double>(g));
}

/// Published bound values for the unified expression (f_name "fI"), used as
/// regression fixtures. Method is closed-form throughout; the k = 3
/// Tsirelson entry is a reported numerical value, not reproduced here.
inline std::vector<BoundValue> known_bound_table(const Scenario& sc, std::string_view f_name) {
  if (f_name != "fI") throw precondition_error("no catalogue entry for coefficient family \"" + std::string(f_name) + "\"");
  std::vector<BoundValue> out;
  if (sc.parties == 2) {
    out.push_back({BoundKind::local, static_cast<double>(sc.outcomes - 1), BoundMethod::closed_form});
  }
  if (sc.parties >= 3) {
    out.push_back({BoundKind::svetlichny,
                   detail::int_pow(sc.settings, sc.parties - 2) * (sc.outcomes - 1),
                   BoundMethod::closed_form});
  }
  if (sc.outcomes == 2) {
    const double cot = std::cos(std::numbers::pi / (2.0 * sc.settings)) /
                       std::sin(std::numbers::pi / (2.0 * sc.settings));
    if (sc.parties >= 3) {
      out.push_back({BoundKind::biseparable,
                     detail::int_pow(sc.settings, sc.parties - 2) * (sc.settings - cot),
                     BoundMethod::closed_form});
    }
    out.push_back({BoundKind::tsirelson, tsirelson_bound_binary(sc.parties, sc.settings),
                   BoundMethod::closed_form});
  }
  if (sc.outcomes == 3 && sc.settings == 2) {
    // Reported numerically: m^(n-2) * (3 - sqrt(11/3)), verified elsewhere to 1e-9.
    out.push_back({BoundKind::tsirelson,
                   detail::int_pow(2, sc.parties - 2) * (3.0 - std::sqrt(11.0 / 3.0)),
                   BoundMethod::closed_form});
  }
  if (out.empty()) throw precondition_error("no catalogue entry for this scenario");
  return out;
}

}  // namespace fcbell
