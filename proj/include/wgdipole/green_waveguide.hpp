// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_GREEN_WAVEGUIDE_HPP
#define WGDIPOLE_GREEN_WAVEGUIDE_HPP

#include "wgdipole/geometry.hpp"
#include "wgdipole/green_free.hpp"

namespace wgdipole {

/// Tuning knobs for the two dyadic-propagator evaluation routes.  Defaults
/// keep the routes in mutual agreement to better than 1e-6 relative over
/// the axial separations used by transport runs.
struct KernelOptions {
  /// Half-width of the (p, q) image-lattice index range kept in the sum.
  int image_truncation_radius = 212;
  /// Gaussian damping width s0; lattice cell (p, q) is weighted
  /// exp(-(p^2+q^2)/s0^2), the sum is repeated at widths 0.7*s0 and 0.49*s0,
  /// and the damping bias is removed by Richardson extrapolation in 1/s0^2.
  double damping_parameter = 40.0;
  /// Evanescent modes with exp(-kappa*|dz|) below this weight are dropped.
  double mode_evanescent_cutoff = 1e-12;
  /// Axial separation below which the image sum replaces the mode sum.
  double crossover_dz = 3.0;
};

/// Dyadic propagator between points of a PEC rectangular guide evaluated by
/// the method of images: free-space tensors summed over the mirror lattice
/// (2pa + sigma*x', 2qb + tau*y', z') with image dipoles transformed by
/// diag(tau, sigma, sigma*tau).  Conditionally convergent; the lattice is
/// damped by Gaussian windows at three widths and extrapolated to infinite
/// width, with a stability check on the extrapolation (throws NumericalError
/// when it has not settled).
/// With exclude_identity the direct (p=q=0, sigma=tau=+1) term is skipped,
/// which leaves the reflected part; this is finite at r == rp.
[[nodiscard]] Mat3c image_sum_dyadic(const Vec3& r, const Vec3& rp,
                                     const WaveguideGeometry& geom, double k,
                                     const KernelOptions& opts,
                                     bool exclude_identity = false);

/// Same propagator from the guided-mode expansion (TE + TM, propagating and
/// evanescent), valid for |dz| > 0 only.  Exponentially convergent in the
/// mode index; evanescent modes are truncated by mode_evanescent_cutoff.
[[nodiscard]] Mat3c mode_sum_dyadic(const Vec3& r, const Vec3& rp,
                                    const WaveguideGeometry& geom, double k,
                                    const KernelOptions& opts);

/// Coincidence-limit tensor for an atom at pos.  The imaginary part comes
/// from the propagating-mode terms at dz = 0 (finite, exact); the real part
/// is the reflected image sum, i.e. the wall-induced shift relative to free
/// space (the divergent free-space shift is absorbed into omega0).
[[nodiscard]] Mat3c waveguide_self_term(const Vec3& pos,
                                        const WaveguideGeometry& geom, double k,
                                        const KernelOptions& opts);

/// Route dispatcher: self-term at coincidence, image sum for
/// |dz| < crossover_dz, mode sum otherwise.
[[nodiscard]] Mat3c waveguide_dyadic(const Vec3& r, const Vec3& rp,
                                     const WaveguideGeometry& geom, double k,
                                     const KernelOptions& opts);

}  // namespace wgdipole

#endif
