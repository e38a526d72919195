#pragma once

#include <cstdint>
#include <vector>

#include "fcbell/expression.hpp"
#include "fcbell/scenario.hpp"
#include "fcbell/tensor.hpp"

namespace fcbell {

// Relabelling reductions of the unified expression to the previously known
// chained (BKP) and two-setting Svetlichny-CGLMP families. Both are output
// relabellings, hence bijections on the joint outcome space; the reductions
// return fresh tensors and leave the expression untouched.

namespace detail {

// Bob's setting permutation for the chained form: 0 -> 0, y -> m - y.
// It is an involution.
inline int bkp_setting_map(int y, int settings) { return y == 0 ? 0 : settings - y; }

// Output shift accompanying the setting map: the relabelled residue r
// corresponds to the original residue [r + shift]_k.
inline int bkp_output_shift(int y) { return y == 0 ? 0 : 1; }

}  // namespace detail

/// The chained-form tensor for two parties, written over the relabelled
/// outputs: residue r stands for the sum of the first party's output and the
/// second party's relabelled output.
///
///   sum_x <[A_x + C_x]_k>  +  sum_{x>=1} <[-(A_x + C_{x-1})]_k>
///                          +  <[-(A_0 + C_{m-1}) - 1]_k>.
inline ExpandedTensor<std::int64_t> bkp_tensor(int settings, int outcomes) {
  const Scenario sc(2, settings, outcomes);
  std::vector<std::int64_t> values(sc.settings_vector_count() * sc.outcomes, 0);
  auto cell = [&](int x, int y, int r) -> std::int64_t& {
    return values[(static_cast<std::uint64_t>(x) * settings + static_cast<std::uint64_t>(y)) * outcomes +
                  static_cast<std::uint64_t>(r)];
  };
  for (int r = 0; r < outcomes; ++r) {
    for (int x = 0; x < settings; ++x) {
      cell(x, x, r) += r;
      if (x >= 1) cell(x, x - 1, r) += detail::imod(-r, outcomes);
    }
    cell(0, settings - 1, r) += detail::imod(-r - 1, outcomes);
  }
  return ExpandedTensor<std::int64_t>(sc, std::move(values));
}

/// Applies the chained-form output relabelling to a bipartite unified
/// expression and returns the relabelled tensor; it must equal bkp_tensor
/// entry by entry.
inline ExpandedTensor<std::int64_t> reduce_to_bkp(const BellExpression<std::int64_t>& expr) {
  const Scenario& sc = expr.scenario();
  if (sc.parties != 2) throw precondition_error("chained-form reduction requires exactly 2 parties");
  if (!has_identity_coefficients(expr.coefficients())) {
    throw precondition_error("chained-form reduction is defined for the unified expression only");
  }
  const auto parent = expand(expr);
  std::vector<std::int64_t> values(parent.values().size());
  for (int x = 0; x < sc.settings; ++x) {
    for (int y = 0; y < sc.settings; ++y) {
      const int y0 = detail::bkp_setting_map(y, sc.settings);
      const int shift = detail::bkp_output_shift(y);
      for (int r = 0; r < sc.outcomes; ++r) {
        values[(static_cast<std::uint64_t>(x) * sc.settings + static_cast<std::uint64_t>(y)) * sc.outcomes +
               static_cast<std::uint64_t>(r)] =
            parent.at(static_cast<std::uint64_t>(x) * sc.settings + static_cast<std::uint64_t>(y0),
                      detail::imod(r + shift, sc.outcomes));
      }
    }
  }
  return ExpandedTensor<std::int64_t>(sc, std::move(values));
}

/// Undoes reduce_to_bkp; reduce then invert is the identity.
inline ExpandedTensor<std::int64_t> bkp_inverse(const ExpandedTensor<std::int64_t>& relabelled) {
  const Scenario& sc = relabelled.scenario();
  if (sc.parties != 2) throw precondition_error("chained-form tensors are bipartite");
  std::vector<std::int64_t> values(relabelled.values().size());
  for (int x = 0; x < sc.settings; ++x) {
    for (int y0 = 0; y0 < sc.settings; ++y0) {
      const int y = detail::bkp_setting_map(y0, sc.settings);  // involution
      const int shift = detail::bkp_output_shift(y);
      for (int r0 = 0; r0 < sc.outcomes; ++r0) {
        values[(static_cast<std::uint64_t>(x) * sc.settings + static_cast<std::uint64_t>(y0)) * sc.outcomes +
               static_cast<std::uint64_t>(r0)] =
            relabelled.at(static_cast<std::uint64_t>(x) * sc.settings + static_cast<std::uint64_t>(y),
                          detail::imod(r0 - shift, sc.outcomes));
      }
    }
  }
  return ExpandedTensor<std::int64_t>(sc, std::move(values));
}

/// The two-setting Svetlichny-CGLMP form: with the per-party output shifts
/// applied, every settings vector carries the coefficient
///
///   [(-1)^S (r + floor((S - 1) / 2))]_k,   S = sum of settings.
inline ExpandedTensor<std::int64_t> svetlichny_cglmp_tensor(int parties, int outcomes) {
  const Scenario sc(parties, 2, outcomes);
  std::vector<std::int64_t> values(sc.settings_vector_count() * sc.outcomes, 0);
  std::vector<int> settings(static_cast<std::size_t>(parties), 0);
  std::uint64_t v = 0;
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    const long long sign = (sum % 2 == 0) ? 1 : -1;
    const long long offset = detail::floordiv(sum - 1, 2);
    for (int r = 0; r < outcomes; ++r) {
      values[v * outcomes + static_cast<std::uint64_t>(r)] =
          detail::imod(sign * (r + offset), outcomes);
    }
    ++v;
  } while (detail::next_tuple(settings, 2));
  return ExpandedTensor<std::int64_t>(sc, std::move(values));
}

/// Applies the output shifts r -> [r - s + 1]_k (first party) and
/// r -> [r - s]_k (others) to a two-setting unified expression. The shifts
/// move the relabelled outcome-sum residue r to the original residue
/// [r + S - 1]_k.
inline ExpandedTensor<std::int64_t> reduce_to_svetlichny_cglmp(const BellExpression<std::int64_t>& expr) {
  const Scenario& sc = expr.scenario();
  if (sc.settings != 2) throw precondition_error("Svetlichny-CGLMP reduction requires exactly 2 settings");
  if (!has_identity_coefficients(expr.coefficients())) {
    throw precondition_error("Svetlichny-CGLMP reduction is defined for the unified expression only");
  }
  const auto parent = expand(expr);
  std::vector<std::int64_t> values(parent.values().size());
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    for (int r = 0; r < sc.outcomes; ++r) {
      values[v * sc.outcomes + static_cast<std::uint64_t>(r)] =
          parent.at(v, detail::imod(r + sum - 1, sc.outcomes));
    }
    ++v;
  } while (detail::next_tuple(settings, 2));
  return ExpandedTensor<std::int64_t>(sc, std::move(values));
}

/// Undoes reduce_to_svetlichny_cglmp.
inline ExpandedTensor<std::int64_t> svetlichny_cglmp_inverse(const ExpandedTensor<std::int64_t>& relabelled) {
  const Scenario& sc = relabelled.scenario();
  if (sc.settings != 2) throw precondition_error("Svetlichny-CGLMP tensors have exactly 2 settings");
  std::vector<std::int64_t> values(relabelled.values().size());
  std::vector<int> settings(static_cast<std::size_t>(sc.parties), 0);
  std::uint64_t v = 0;
  do {
    long long sum = 0;
    for (int s : settings) sum += s;
    for (int r = 0; r < sc.outcomes; ++r) {
      values[v * sc.outcomes + static_cast<std::uint64_t>(r)] =
          relabelled.at(v, detail::imod(r - sum + 1, sc.outcomes));
    }
    ++v;
  } while (detail::next_tuple(settings, 2));
  return ExpandedTensor<std::int64_t>(sc, std::move(values));
}

}  // namespace fcbell
