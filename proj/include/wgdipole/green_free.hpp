// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_GREEN_FREE_HPP
#define WGDIPOLE_GREEN_FREE_HPP

#include <Eigen/Dense>
#include <complex>

namespace wgdipole {

using Vec3 = Eigen::Vector3d;
using Mat3c = Eigen::Matrix3cd;

/// Free-space dyadic propagator between two dipoles separated by r, in units
/// where the coincidence limit of the imaginary part is the identity (one
/// atom then decays at gamma0).  With rho = k0*|r| and u = r/|r|:
///
///   g = (3/2) (e^{i rho}/rho) [ (1 + i/rho - 1/rho^2) I
///                             - (1 + 3i/rho - 3/rho^2) u u ]
///
/// The real part carries the static 1/rho^3 near field; the far field is
/// transverse with magnitude (3/2)/rho.  Throws NumericalError at |r| = 0
/// (coincidence is handled by the self-term convention, g = i*I).
[[nodiscard]] Mat3c free_space_dyadic(const Vec3& r);

}  // namespace wgdipole

#endif
