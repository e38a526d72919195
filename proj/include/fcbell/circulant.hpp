#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "fcbell/scenario.hpp"

namespace fcbell {

/// Specification of the m x m modified circulant matrix
///
///   M_{yz} = sum_x g([x+y+z']_m) (-1)^floor((x+y+z')/m) A_x,   z' = m-1-z,
///
/// whose largest singular value (maximized over the sign vector A) yields
/// the biseparable bound of the binary-outcome product-form expression.
struct CirculantSpec {
  int settings = 0;
  std::vector<double> weights;  // g(0..m-1)
  std::vector<int> signs;       // A_x in {-1,+1}

  CirculantSpec(int settings_, std::vector<double> weights_, std::vector<int> signs_)
      : settings(settings_), weights(std::move(weights_)), signs(std::move(signs_)) {
    if (settings < 2) throw invalid_scenario("circulant spec requires settings >= 2");
    if (static_cast<int>(weights.size()) != settings || static_cast<int>(signs.size()) != settings) {
      throw dimension_mismatch("weights and signs must each have one entry per setting");
    }
    for (int a : signs) {
      if (a != 1 && a != -1) throw validation_error("sign vector entries must be +1 or -1");
    }
  }
};

struct SpectralData {
  std::vector<std::complex<double>> eigenvalues;  // closed form, index j
  std::vector<double> singular_values;            // numeric, descending
};

struct CirculantResult {
  Eigen::MatrixXd matrix;
  SpectralData spectral;
};

/// Builds M, evaluates the closed-form eigenvalues
///
///   lambda_j = (sum_x A_x w_j^x)(sum_s g(s) w_j^(m-1-s)),  w_j = e^{i pi (2j+1)/m},
///
/// and cross-checks them against a numeric SVD: the matrix is normal, so
/// the singular values must equal |lambda_j|, and v_j = (1, w_j, ...,
/// w_j^(m-1)) must be an eigenvector. Both checks hold to `tolerance` or
/// the call fails.
inline CirculantResult circulant_matrix(const CirculantSpec& spec, double tolerance = 1e-9) {
  const int m = spec.settings;
  Eigen::MatrixXd mat(m, m);
  for (int y = 0; y < m; ++y) {
    for (int z = 0; z < m; ++z) {
      const int zp = m - 1 - z;
      double entry = 0.0;
      for (int x = 0; x < m; ++x) {
        const int t = x + y + zp;
        const double sign = (detail::floordiv(t, m) % 2 == 0) ? 1.0 : -1.0;
        entry += spec.weights[static_cast<std::size_t>(detail::imod(t, m))] * sign *
                 static_cast<double>(spec.signs[static_cast<std::size_t>(x)]);
      }
      mat(y, z) = entry;
    }
  }

  SpectralData spectral;
  spectral.eigenvalues.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const std::complex<double> omega = std::polar(1.0, std::numbers::pi * (2.0 * j + 1.0) / m);
    std::complex<double> sign_sum{0.0, 0.0};
    std::complex<double> weight_sum{0.0, 0.0};
    for (int x = 0; x < m; ++x) {
      sign_sum += static_cast<double>(spec.signs[static_cast<std::size_t>(x)]) * std::pow(omega, x);
    }
    for (int s = 0; s < m; ++s) {
      weight_sum += spec.weights[static_cast<std::size_t>(s)] * std::pow(omega, m - 1 - s);
    }
    spectral.eigenvalues[static_cast<std::size_t>(j)] = sign_sum * weight_sum;

    // Eigenvector check: M v_j = lambda_j v_j componentwise.
    Eigen::VectorXcd v(m);
    for (int x = 0; x < m; ++x) v(x) = std::pow(omega, x);
    const Eigen::VectorXcd residual =
        mat.cast<std::complex<double>>() * v - spectral.eigenvalues[static_cast<std::size_t>(j)] * v;
    if (residual.cwiseAbs().maxCoeff() > tolerance) {
      throw error("circulant eigenvector check failed beyond tolerance");
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
  spectral.singular_values.assign(svd.singularValues().data(),
                                  svd.singularValues().data() + m);

  std::vector<double> moduli(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) moduli[static_cast<std::size_t>(j)] = std::abs(spectral.eigenvalues[static_cast<std::size_t>(j)]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  for (int j = 0; j < m; ++j) {
    if (std::abs(moduli[static_cast<std::size_t>(j)] - spectral.singular_values[static_cast<std::size_t>(j)]) > tolerance) {
      throw error("circulant singular values disagree with eigenvalue moduli beyond tolerance");
    }
  }

  return CirculantResult{std::move(mat), std::move(spectral)};
}

/// Largest singular value over all 2^m sign vectors; the exhaustive
/// counterpart of the gcd/cosecant closed form.
inline double max_singular_value_over_signs(int settings, const std::vector<double>& weights) {
  if (settings < 2 || static_cast<int>(weights.size()) != settings) {
    throw dimension_mismatch("weights must have one entry per setting");
  }
  double best = 0.0;
  std::vector<int> signs(static_cast<std::size_t>(settings), 1);
  const std::uint64_t total = detail::upow(2, settings);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (int x = 0; x < settings; ++x) {
      signs[static_cast<std::size_t>(x)] = (bits >> x) & 1 ? -1 : 1;
    }
    const auto result = circulant_matrix(CirculantSpec(settings, weights, signs));
    best = std::max(best, result.spectral.singular_values.front());
  }
  return best;
}

}  // namespace fcbell
