// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_UNITS_HPP
#define WGDIPOLE_UNITS_HPP

namespace wgdipole {

// Natural unit system used throughout: the resonant wavenumber k0, the
// single-atom amplitude decay constant gamma0 and the speed of light are all
// set to one.  Lengths are measured in 1/k0, frequencies and rates in gamma0.
inline constexpr double k0 = 1.0;
inline constexpr double gamma0 = 1.0;
inline constexpr double c_light = 1.0;

// Resonant scattering cross section of a single atom, sigma0 = 6*pi/k0^2.
inline constexpr double sigma0 = 6.0 * 3.14159265358979323846 / (k0 * k0);

}  // namespace wgdipole

#endif
