// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/solve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "wgdipole/errors.hpp"
#include "wgdipole/units.hpp"

namespace wgdipole {

void SourceSpec::validate(const WaveguideGeometry& geom) const {
  geom.validate();
  if (position.x() <= 0.0 || position.x() >= geom.a || position.y() <= 0.0 ||
      position.y() >= geom.b) {
    throw ConfigError("source position must lie strictly inside the cross-section");
  }
  if (position.z() >= 0.0) {
    throw ConfigError("source must sit below the sample (z < 0)");
  }
  if (!(orientation.norm() > 0.0)) {
    throw ConfigError("source orientation must be a nonzero vector");
  }
}

Eigen::VectorXcd source_coupling_vector(const Realization& real,
                                        const SourceSpec& source, double k,
                                        const KernelOptions& opts) {
  source.validate(real.geom);
  const Vec3 unit = source.orientation.normalized();
  const int n = real.n_atoms();
  Eigen::VectorXcd v(3 * n);
  for (int i = 0; i < n; ++i) {
    const Mat3c g =
        waveguide_dyadic(real.positions[i], source.position, real.geom, k, opts);
    v.segment<3>(3 * i) = -0.5 * gamma0 * (g * unit.cast<std::complex<double>>());
  }
  return v;
}

Eigen::VectorXcd stationary_amplitudes(const Eigen::MatrixXcd& sigma,
                                       const Eigen::VectorXcd& v,
                                       double detuning) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != v.size()) {
    throw ConfigError("stationary_amplitudes: dimension mismatch");
  }
  if (v.size() == 0) return Eigen::VectorXcd();

  Eigen::MatrixXcd system = -sigma;
  system.diagonal().array() += std::complex<double>(detuning, 0.0);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
  const Eigen::VectorXcd b = lu.solve(v);

  const double vnorm = v.norm();
  const double residual = (system * b - v).norm();
  if (!(residual <= 1e-10 * vnorm)) {
    std::ostringstream msg;
    msg << "stationary_amplitudes: solve residual " << residual << " exceeds 1e-10*||v|| ("
        << 1e-10 * vnorm << ")";
    throw NumericalError(msg.str());
  }
  return b;
}

Eigen::VectorXcd stationary_amplitudes(const Eigen::MatrixXcd& sigma,
                                       const Realization& real,
                                       const SourceSpec& source, double k,
                                       const KernelOptions& opts) {
  return stationary_amplitudes(sigma, source_coupling_vector(real, source, k, opts),
                               source.detuning);
}

Eigen::VectorXcd time_domain_envelope(const Eigen::MatrixXcd& sigma,
                                      const Eigen::VectorXcd& v, double detuning,
                                      const TimeDomainOptions& opts) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != v.size()) {
    throw ConfigError("time_domain_envelope: dimension mismatch");
  }
  if (!(opts.gamma_s > 0.0) || !(opts.gamma_s < gamma0)) {
    throw ConfigError("time_domain_envelope: gamma_s must lie in (0, gamma0)");
  }
  if (v.size() == 0) return Eigen::VectorXcd();

  const std::complex<double> ij(0.0, 1.0);
  Eigen::MatrixXcd m = -ij * sigma;
  m.diagonal().array() += ij * detuning;

  // RK4 stability wants h * spectral_radius(m) small; the Frobenius norm is a
  // cheap upper bound.  Close atom pairs carry large dispersive shifts, so
  // this cannot be a fixed constant.
  const double h = std::min(0.005, 0.5 / std::max(1.0, m.norm()));

  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(v.size());
  if (opts.initial_state.size() != 0) {
    if (opts.initial_state.size() != v.size()) {
      throw ConfigError("time_domain_envelope: initial_state dimension mismatch");
    }
    b = opts.initial_state;
  }
  Eigen::VectorXcd prev_envelope = b;
  const auto drive = [&](double t) { return std::exp(-0.5 * opts.gamma_s * t); };

  double t = 0.0;
  double next_check = opts.check_window;
  while (t < opts.t_max) {
    const Eigen::VectorXcd k1 = m * b - ij * drive(t) * v;
    const Eigen::VectorXcd k2 =
        m * (b + 0.5 * h * k1) - ij * drive(t + 0.5 * h) * v;
    const Eigen::VectorXcd k3 =
        m * (b + 0.5 * h * k2) - ij * drive(t + 0.5 * h) * v;
    const Eigen::VectorXcd k4 = m * (b + h * k3) - ij * drive(t + h) * v;
    b += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (t >= next_check) {
      if (opts.on_sample) opts.on_sample(t, b.norm());
      const Eigen::VectorXcd envelope = b / drive(t);
      if (!opts.run_to_t_max) {
        const double change = (envelope - prev_envelope).norm();
        if (change <= opts.settle_tolerance * std::max(envelope.norm(), 1e-300)) {
          return envelope;
        }
      }
      prev_envelope = envelope;
      next_check += opts.check_window;
    }
  }
  if (opts.run_to_t_max) return b / drive(t);
  throw NumericalError(
      "time_domain_envelope: envelope did not settle before t_max; slow "
      "subradiant transient or settle_tolerance too tight");
}

}  // namespace wgdipole
