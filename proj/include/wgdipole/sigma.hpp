// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_SIGMA_HPP
#define WGDIPOLE_SIGMA_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wgdipole/geometry.hpp"
#include "wgdipole/green_waveguide.hpp"

namespace wgdipole {

/// One random atomic configuration inside the guide.  Positions are strictly
/// interior in the cross-section and lie in z ∈ (0, sample_length); pairwise
/// separations respect the transport module's minimum-distance rule.
struct Realization {
  std::vector<Vec3> positions;
  WaveguideGeometry geom{1.0, 1.0};
  double sample_length = 0.0;
  /// RNG stream key that produced this configuration (reproducibility tag).
  std::uint64_t seed_tag = 0;

  [[nodiscard]] int n_atoms() const { return static_cast<int>(positions.size()); }
};

/// Assembles the 3N x 3N coupling matrix with 3x3 blocks
///   Sigma_ij = -(gamma0/2) * g(r_i, r_j)   (i != j)
///   Sigma_ii = -(gamma0/2) * g_self(r_i)
/// evaluated at the resonant wavenumber k (pole approximation: the detuning
/// enters only through the resolvent diagonal, never through the kernel).
/// Index convention: row/column 3*i + alpha, alpha in {x, y, z}.  The three
/// Cartesian components per atom are the J=0 -> J=1 transition written in the
/// Cartesian dipole basis, which is unitarily equivalent to the m_J = -1,0,+1
/// spherical basis (e_0 = z, e_{+-1} = (x -+ iy)/sqrt(2)); in this basis the
/// kernel is the plain 3x3 tensor and Sigma comes out complex symmetric.
/// Off-diagonal blocks are computed once per unordered pair and mirrored by
/// transposition, so reciprocity symmetry holds exactly.
[[nodiscard]] Eigen::MatrixXcd assemble_sigma(const Realization& real, double k,
                                              const KernelOptions& opts);

/// Eigenvalues of Sigma reported as (shift, rate) = (Re lambda, -2 Im lambda),
/// sorted by ascending rate (ties by shift).  Rates are collective decay
/// rates in gamma0 units; passivity demands rate >= -1e-8.
[[nodiscard]] std::vector<std::pair<double, double>> collective_spectrum(
    const Eigen::MatrixXcd& sigma);

}  // namespace wgdipole

#endif
