// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/green_free.hpp"

#include <cmath>

#include "wgdipole/errors.hpp"
#include "wgdipole/units.hpp"

namespace wgdipole {

Mat3c free_space_dyadic(const Vec3& r) {
  const double dist = r.norm();
  if (dist == 0.0) {
    throw NumericalError("free_space_dyadic: zero separation");
  }
  const double rho = k0 * dist;
  const std::complex<double> i(0.0, 1.0);
  const double inv = 1.0 / rho;
  const std::complex<double> pref =
      1.5 * std::complex<double>(std::cos(rho), std::sin(rho)) * inv;
  const std::complex<double> ca = pref * (1.0 + (i - inv) * inv);
  const std::complex<double> cb = -pref * (1.0 + (3.0 * i - 3.0 * inv) * inv);
  const Vec3 u = r / dist;
  Mat3c g = Mat3c::Zero();
  for (int al = 0; al < 3; ++al) {
    for (int be = 0; be < 3; ++be) {
      g(al, be) = cb * u[al] * u[be];
    }
    g(al, al) += ca;
  }
  return g;
}

}  // namespace wgdipole
