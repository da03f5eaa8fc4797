// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wgdipole/errors.hpp"

namespace wgdipole {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double cutoff_guard = 1e-9;  // relative distance treated as singular
}  // namespace

void WaveguideGeometry::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("waveguide sides must be positive finite, got a=" +
                      std::to_string(a) + " b=" + std::to_string(b));
  }
}

std::string Mode::label() const {
  return (family == ModeFamily::TE ? "TE" : "TM") + std::to_string(m) +
         std::to_string(n);
}

double cutoff_wavenumber(const WaveguideGeometry& geom, int m, int n) {
  geom.validate();
  if (m < 0 || n < 0) {
    throw ConfigError("mode indices must be non-negative");
  }
  return std::hypot(m * pi / geom.a, n * pi / geom.b);
}

std::complex<double> longitudinal_wavenumber(double k, double kc) {
  if (!(k > 0.0)) {
    throw ConfigError("frequency k must be positive");
  }
  if (std::abs(k - kc) / k < cutoff_guard) {
    throw NumericalError("mode is singular: k equals the cutoff within guard");
  }
  if (k > kc) {
    return {std::sqrt(k * k - kc * kc), 0.0};
  }
  return {0.0, std::sqrt(kc * kc - k * k)};
}

std::vector<Mode> propagating_modes(const WaveguideGeometry& geom, double k) {
  geom.validate();
  if (!(k > 0.0)) {
    throw ConfigError("frequency k must be positive");
  }
  std::vector<Mode> out;
  const int m_max = static_cast<int>(std::floor(k * geom.a / pi)) + 1;
  const int n_max = static_cast<int>(std::floor(k * geom.b / pi)) + 1;
  for (int m = 0; m <= m_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      const double kc = cutoff_wavenumber(geom, m, n);
      if (kc >= k) continue;
      if (m > 0 || n > 0) out.push_back({ModeFamily::TE, m, n, kc});
      if (m > 0 && n > 0) out.push_back({ModeFamily::TM, m, n, kc});
    }
  }
  std::sort(out.begin(), out.end(), [](const Mode& p, const Mode& q) {
    if (p.kc != q.kc) return p.kc < q.kc;
    if (p.family != q.family) return p.family == ModeFamily::TE;
    if (p.m != q.m) return p.m < q.m;
    return p.n < q.n;
  });
  return out;
}

}  // namespace wgdipole
