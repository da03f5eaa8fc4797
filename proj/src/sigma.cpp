// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/sigma.hpp"

#include <algorithm>
#include <sstream>

#include "wgdipole/errors.hpp"
#include "wgdipole/units.hpp"

namespace wgdipole {

Eigen::MatrixXcd assemble_sigma(const Realization& real, double k,
                                const KernelOptions& opts) {
  real.geom.validate();
  const int n = real.n_atoms();
  const double pref = -0.5 * gamma0;

  for (int i = 0; i < n; ++i) {
    const Vec3& p = real.positions[i];
    if (p.x() <= 0.0 || p.x() >= real.geom.a || p.y() <= 0.0 ||
        p.y() >= real.geom.b) {
      std::ostringstream msg;
      msg << "assemble_sigma: atom " << i << " outside the open cross-section";
      throw ConfigError(msg.str());
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (real.positions[i] == real.positions[j]) {
        std::ostringstream msg;
        msg << "assemble_sigma: atoms " << i << " and " << j
            << " occupy the same position";
        throw ConfigError(msg.str());
      }
    }
  }

  Eigen::MatrixXcd sigma(3 * n, 3 * n);
  for (int i = 0; i < n; ++i) {
    sigma.block<3, 3>(3 * i, 3 * i) =
        pref * waveguide_self_term(real.positions[i], real.geom, k, opts);
    for (int j = i + 1; j < n; ++j) {
      const Mat3c block = pref * waveguide_dyadic(real.positions[i],
                                                  real.positions[j], real.geom,
                                                  k, opts);
      sigma.block<3, 3>(3 * i, 3 * j) = block;
      // Reciprocity g(r, r') = g(r', r)^T makes Sigma symmetric; mirroring
      // the computed block keeps that exact instead of 1e-10-approximate.
      sigma.block<3, 3>(3 * j, 3 * i) = block.transpose();
    }
  }
  return sigma;
}

std::vector<std::pair<double, double>> collective_spectrum(
    const Eigen::MatrixXcd& sigma) {
  if (sigma.rows() != sigma.cols()) {
    throw ConfigError("collective_spectrum: matrix must be square");
  }
  std::vector<std::pair<double, double>> out;
  if (sigma.rows() == 0) return out;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sigma, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("collective_spectrum: eigenvalue solver failed");
  }
  out.reserve(static_cast<std::size_t>(sigma.rows()));
  for (Eigen::Index j = 0; j < sigma.rows(); ++j) {
    const auto lambda = solver.eigenvalues()(j);
    out.emplace_back(lambda.real(), -2.0 * lambda.imag());
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second < r.second;
    return l.first < r.first;
  });
  return out;
}

}  // namespace wgdipole
