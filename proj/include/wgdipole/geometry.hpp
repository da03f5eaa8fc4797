// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_GEOMETRY_HPP
#define WGDIPOLE_GEOMETRY_HPP

#include <complex>
#include <string>
#include <vector>

namespace wgdipole {

/// Rectangular waveguide with perfectly conducting walls at x = 0, x = a,
/// y = 0 and y = b.  The guide axis is z.  Side lengths are in units of 1/k0.
struct WaveguideGeometry {
  double a = 0.0;
  double b = 0.0;

  /// Throws ConfigError unless both sides are positive and finite.
  void validate() const;
};

enum class ModeFamily { TE, TM };

/// One guided mode.  TE modes require (m, n) != (0, 0); TM modes require
/// m >= 1 and n >= 1.
struct Mode {
  ModeFamily family = ModeFamily::TE;
  int m = 0;
  int n = 0;
  double kc = 0.0;  ///< transverse cutoff wavenumber

  [[nodiscard]] std::string label() const;  ///< e.g. "TE10"
};

/// Cutoff wavenumber kc = sqrt((m*pi/a)^2 + (n*pi/b)^2).
[[nodiscard]] double cutoff_wavenumber(const WaveguideGeometry& geom, int m, int n);

/// Longitudinal wavenumber at frequency k (= omega/c): real sqrt(k^2 - kc^2)
/// above cutoff, i*sqrt(kc^2 - k^2) below (decaying branch, Im kz > 0).
/// Throws NumericalError when k sits on the cutoff, |k - kc| / k < 1e-9.
[[nodiscard]] std::complex<double> longitudinal_wavenumber(double k, double kc);

/// All propagating modes at frequency k, sorted by ascending cutoff; ties are
/// broken TE before TM, then lexicographically by (m, n).
[[nodiscard]] std::vector<Mode> propagating_modes(const WaveguideGeometry& geom, double k);

}  // namespace wgdipole

#endif
