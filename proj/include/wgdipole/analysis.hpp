// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_ANALYSIS_HPP
#define WGDIPOLE_ANALYSIS_HPP

#include <limits>

#include "wgdipole/transport.hpp"

namespace wgdipole {

/// Photon mean free path from the free-space scattering cross section:
/// (1 / (n * sigma0)) * (delta^2 + (gamma0/2)^2) / (gamma0/2)^2.
[[nodiscard]] double mean_free_path(double density, double detuning);

/// Default lower edge of the fit window: twice the mean free path, which
/// excludes the ballistic/coherent regime from the scaling fits.
[[nodiscard]] double default_fit_window_min(double density, double detuning);

enum class ScalingModel { exponential, hyperbolic };

/// Result of one scaling-law fit.
/// exponential: T(L) = p0 * exp(-L / p1)      (p0 = T0, p1 = l_loc)
/// hyperbolic:  T(L) = p0 / (L + p1)          (p0 = c,  p1 = L0)
/// residual_sum is the weighted sum of squared residuals in linear T space
/// for BOTH models (even though the exponential fit itself runs on ln T), so
/// model selection compares like with like.
struct ScalingFit {
  ScalingModel model = ScalingModel::exponential;
  double p0 = 0.0;
  double p1 = 0.0;
  double p0_err = 0.0;
  double p1_err = 0.0;
  double residual_sum = 0.0;
  int n_points = 0;

  [[nodiscard]] double residual_per_dof() const {
    return residual_sum / std::max(1, n_points - 2);
  }
  [[nodiscard]] double evaluate(double length) const;
};

/// Weighted linear least squares on ln<T> vs L over valid curve points with
/// l_min <= L <= l_max.  Weights come from the standard errors propagated to
/// log scale; if any selected point lacks an error bar the fit falls back to
/// unweighted with residual-scaled covariance.  Requires >= 4 usable points
/// with positive <T>.
[[nodiscard]] ScalingFit fit_exponential(const TransmissionCurve& curve,
                                         double l_min,
                                         double l_max = std::numeric_limits<double>::infinity());

/// Gauss-Newton weighted least squares of T = c/(L + L0) over the same
/// window rules.  L0 absorbs the ballistic offset; the asymptotic law is
/// c/L.
[[nodiscard]] ScalingFit fit_hyperbolic(const TransmissionCurve& curve,
                                        double l_min,
                                        double l_max = std::numeric_limits<double>::infinity());

enum class Regime { localization, diffusive, ambiguous };

/// Compares residual sums per degree of freedom (both fits must cover the
/// same window); declares a winner only when the loser's per-dof residual
/// exceeds the winner's by more than 2x, otherwise Ambiguous.
[[nodiscard]] Regime select_model(const ScalingFit& fit_exp,
                                  const ScalingFit& fit_hyp);

[[nodiscard]] const char* regime_name(Regime regime);

}  // namespace wgdipole

#endif
