// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wgdipole/errors.hpp"
#include "wgdipole/units.hpp"

namespace wgdipole {

namespace {

struct FitData {
  std::vector<double> length;
  std::vector<double> t_mean;
  std::vector<double> t_stderr;
  bool weighted = true;  // false once any selected point lacks an error bar
};

FitData select_points(const TransmissionCurve& curve, double l_min, double l_max) {
  if (!(l_min >= 0.0) || !(l_max > l_min)) {
    throw ConfigError("fit window [" + std::to_string(l_min) + ", " +
                      std::to_string(l_max) + ") is not a valid length range");
  }
  FitData data;
  for (const CurvePoint& point : curve.points) {
    if (!point.valid) continue;
    if (point.length < l_min || point.length > l_max) continue;
    if (!(point.t_mean > 0.0) || !std::isfinite(point.t_mean)) {
      throw NumericalError("curve point at L=" + std::to_string(point.length) +
                           " has non-positive mean transmission; cannot fit "
                           "scaling laws");
    }
    data.length.push_back(point.length);
    data.t_mean.push_back(point.t_mean);
    data.t_stderr.push_back(point.t_stderr);
    if (!(point.t_stderr > 0.0)) data.weighted = false;
  }
  if (data.length.size() < 4) {
    throw NumericalError("fit window contains only " +
                         std::to_string(data.length.size()) +
                         " usable curve points; at least 4 are required");
  }
  return data;
}

/// Weighted sum of squared residuals in linear T space, the common metric
/// used for model selection.  Unweighted data uses unit weights.
double linear_residual_sum(const FitData& data, const ScalingFit& fit) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.length.size(); ++i) {
    const double resid = data.t_mean[i] - fit.evaluate(data.length[i]);
    const double weight =
        data.weighted ? 1.0 / (data.t_stderr[i] * data.t_stderr[i]) : 1.0;
    sum += weight * resid * resid;
  }
  return sum;
}

}  // namespace

double mean_free_path(double density, double detuning) {
  if (!(density > 0.0)) {
    throw ConfigError("mean_free_path requires a positive scatterer density");
  }
  if (!std::isfinite(detuning)) {
    throw ConfigError("mean_free_path requires a finite detuning");
  }
  const double half_width = 0.5 * gamma0;
  const double lorentz =
      (detuning * detuning + half_width * half_width) / (half_width * half_width);
  return lorentz / (density * sigma0);
}

double default_fit_window_min(double density, double detuning) {
  return 2.0 * mean_free_path(density, detuning);
}

double ScalingFit::evaluate(double length) const {
  if (model == ScalingModel::exponential) {
    return p0 * std::exp(-length / p1);
  }
  return p0 / (length + p1);
}

ScalingFit fit_exponential(const TransmissionCurve& curve, double l_min,
                           double l_max) {
  const FitData data = select_points(curve, l_min, l_max);
  const int n = static_cast<int>(data.length.size());

  // Linear model ln T = beta0 + beta1 * L, with log-scale errors
  // sigma_log = t_stderr / t_mean (delta method).
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd response(n);
  Eigen::VectorXd weight(n);
  for (int i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = data.length[i];
    response(i) = std::log(data.t_mean[i]);
    if (data.weighted) {
      const double sigma_log = data.t_stderr[i] / data.t_mean[i];
      weight(i) = 1.0 / (sigma_log * sigma_log);
    } else {
      weight(i) = 1.0;
    }
  }

  const Eigen::MatrixXd normal =
      design.transpose() * weight.asDiagonal() * design;
  const Eigen::VectorXd rhs = design.transpose() * (weight.array() * response.array()).matrix();
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
  if (ldlt.info() != Eigen::Success) {
    throw NumericalError("exponential fit normal equations are singular");
  }
  const Eigen::VectorXd beta = ldlt.solve(rhs);
  Eigen::MatrixXd covariance = ldlt.solve(Eigen::MatrixXd::Identity(2, 2));
  if (!data.weighted) {
    // Unknown noise level: scale the covariance by the residual variance.
    const Eigen::VectorXd resid = response - design * beta;
    covariance *= resid.squaredNorm() / std::max(1, n - 2);
  }

  if (!(beta(1) < 0.0)) {
    throw NumericalError(
        "exponential fit produced a non-decaying slope; transmission does "
        "not fall with sample length over the fit window");
  }

  ScalingFit fit;
  fit.model = ScalingModel::exponential;
  fit.p0 = std::exp(beta(0));
  fit.p1 = -1.0 / beta(1);
  const double sigma_beta0 = std::sqrt(std::max(0.0, covariance(0, 0)));
  const double sigma_beta1 = std::sqrt(std::max(0.0, covariance(1, 1)));
  fit.p0_err = fit.p0 * sigma_beta0;
  fit.p1_err = sigma_beta1 * fit.p1 * fit.p1;
  fit.n_points = n;
  fit.residual_sum = linear_residual_sum(data, fit);
  return fit;
}

ScalingFit fit_hyperbolic(const TransmissionCurve& curve, double l_min,
                          double l_max) {
  const FitData data = select_points(curve, l_min, l_max);
  const int n = static_cast<int>(data.length.size());

  Eigen::VectorXd weight(n);
  for (int i = 0; i < n; ++i) {
    weight(i) = data.weighted
                    ? 1.0 / (data.t_stderr[i] * data.t_stderr[i])
                    : 1.0;
  }

  // Initial guess from the two window endpoints: T1(L1+L0) = Tn(Ln+L0).
  double c = 0.0;
  double l0 = 0.0;
  {
    const double t_first = data.t_mean.front();
    const double t_last = data.t_mean.back();
    const double l_first = data.length.front();
    const double l_last = data.length.back();
    if (t_first > t_last) {
      l0 = (t_last * l_last - t_first * l_first) / (t_first - t_last);
      c = t_first * (l_first + l0);
    }
    if (!(c > 0.0) || !std::isfinite(l0) ||
        l_first + l0 <= 1e-9 * (1.0 + std::abs(l_first))) {
      l0 = 0.0;
      c = 0.0;
      for (int i = 0; i < n; ++i) c += data.t_mean[i] * data.length[i];
      c /= n;
    }
  }

  const double l_shortest = *std::min_element(data.length.begin(), data.length.end());
  Eigen::MatrixXd jacobian(n, 2);
  Eigen::VectorXd resid(n);
  Eigen::MatrixXd normal(2, 2);
  bool converged = false;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    for (int i = 0; i < n; ++i) {
      const double denom = data.length[i] + l0;
      resid(i) = data.t_mean[i] - c / denom;
      jacobian(i, 0) = -1.0 / denom;
      jacobian(i, 1) = c / (denom * denom);
    }
    normal = jacobian.transpose() * weight.asDiagonal() * jacobian;
    const Eigen::VectorXd rhs =
        jacobian.transpose() * (weight.array() * resid.array()).matrix();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    if (ldlt.info() != Eigen::Success) {
      throw NumericalError("hyperbolic fit normal equations are singular");
    }
    const Eigen::VectorXd step = ldlt.solve(rhs);

    // Backtrack so the pole stays left of every sampled length.
    double scale = 1.0;
    for (int halvings = 0; halvings < 60; ++halvings) {
      if (l_shortest + (l0 - scale * step(1)) > 1e-9 * (1.0 + l_shortest)) break;
      scale *= 0.5;
    }
    c -= scale * step(0);
    l0 -= scale * step(1);
    converged = step.cwiseAbs().maxCoeff() * scale <=
                1e-13 * (std::abs(c) + std::abs(l0) + 1.0);
  }
  if (!converged) {
    throw NumericalError("hyperbolic fit did not converge in 200 iterations");
  }
  if (!(c > 0.0)) {
    throw NumericalError("hyperbolic fit produced a non-positive amplitude");
  }

  Eigen::MatrixXd covariance =
      Eigen::LDLT<Eigen::MatrixXd>(normal).solve(Eigen::MatrixXd::Identity(2, 2));

  ScalingFit fit;
  fit.model = ScalingModel::hyperbolic;
  fit.p0 = c;
  fit.p1 = l0;
  fit.n_points = n;
  fit.residual_sum = linear_residual_sum(data, fit);
  if (!data.weighted) {
    covariance *= fit.residual_sum / std::max(1, n - 2);
  }
  fit.p0_err = std::sqrt(std::max(0.0, covariance(0, 0)));
  fit.p1_err = std::sqrt(std::max(0.0, covariance(1, 1)));
  return fit;
}

Regime select_model(const ScalingFit& fit_exp, const ScalingFit& fit_hyp) {
  const double per_dof_exp = fit_exp.residual_per_dof();
  const double per_dof_hyp = fit_hyp.residual_per_dof();
  if (per_dof_exp == per_dof_hyp) return Regime::ambiguous;
  const double better = std::min(per_dof_exp, per_dof_hyp);
  const double worse = std::max(per_dof_exp, per_dof_hyp);
  if (better == 0.0 || worse / better > 2.0) {
    return per_dof_exp < per_dof_hyp ? Regime::localization : Regime::diffusive;
  }
  return Regime::ambiguous;
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::localization:
      return "localization";
    case Regime::diffusive:
      return "diffusive";
    case Regime::ambiguous:
      return "ambiguous";
  }
  return "ambiguous";
}

}  // namespace wgdipole
