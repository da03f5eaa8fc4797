// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_TRANSPORT_HPP
#define WGDIPOLE_TRANSPORT_HPP

#include <cstdint>
#include <vector>

#include "wgdipole/solve.hpp"

namespace wgdipole {

using Vec3c = Eigen::Vector3cd;

/// Minimum pairwise atom separation (1/k0 units).  Keeps configurations out
/// of the contact-term regime where the point-dipole kernel is unphysical;
/// at the densities studied here the excluded phase space is negligible.
inline constexpr double min_pair_separation = 0.05;

/// splitmix64 finalizer; the basis for all stream keying and sampling here.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x);

/// Tiny counter-based generator (splitmix64).  Chosen over std engines so
/// streams are cheap to key and bitwise reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform double strictly inside (0, 1): ((bits >> 11) + 0.5) * 2^-53.
  double uniform_open();

 private:
  std::uint64_t state_;
};

/// Deterministic per-realization stream key from (master seed, index of the
/// length point, realization index); independent of thread scheduling.
[[nodiscard]] std::uint64_t realization_stream_seed(std::uint64_t master_seed,
                                                    std::size_t l_index,
                                                    std::size_t realization_index);

/// Polarization-indifferent intensity pickup: |E|^2 summed over the three
/// Cartesian detector orientations, averaged over an nx x ny mid-cell grid
/// spanning the cross-section at z = sample length + z_offset.
struct DetectorGrid {
  double z_offset = 100.0;
  int nx = 16;
  int ny = 16;

  void validate() const;
};

/// Full experiment description for one T(L) scan.
struct SimulationConfig {
  WaveguideGeometry geom{4.0, 2.0};
  double density = 0.0;    ///< atoms per unit volume (k0^3 units)
  double detuning = 0.0;   ///< omega_s - omega0 (gamma0 units)
  std::vector<double> lengths;
  int realizations_per_l = 256;
  std::uint64_t master_seed = 123456789;
  SourceSpec source;       ///< detuning field is overridden by `detuning`
  bool source_xy_explicit = false;  ///< cross-section position given by user
  DetectorGrid detector;
  KernelOptions kernel;

  void validate() const;
  /// Source with defaults resolved: the config-level detuning is copied in
  /// (it is canonical), and unless source_xy_explicit is set the transverse
  /// position snaps to the cross-section center (a/2, b/2), so sweeps over
  /// geometry keep the source centered.
  [[nodiscard]] SourceSpec resolved_source() const;
};

/// Per-length aggregate over realizations.
struct CurvePoint {
  double length = 0.0;
  double t_mean = 0.0;
  double t_stderr = 0.0;
  double t_geomean = 0.0;
  int n_realizations = 0;  ///< successful realizations entering the averages
  int n_failed = 0;
  bool valid = true;       ///< false when more than 10% of realizations failed
  std::uint64_t point_seed = 0;  ///< stream key of realization 0 at this L
  double wall_seconds = 0.0;     ///< manifest metadata only
};

struct TransmissionCurve {
  std::vector<CurvePoint> points;
};

/// Draws N = round(density * a * b * L) atoms i.i.d. uniform in the open box
/// (0,a) x (0,b) x (0,L), rejection-resampled so every pair is at least
/// min_pair_separation apart.  Throws ConfigError when an atom cannot be
/// placed within 10^4 attempts.
[[nodiscard]] Realization generate_realization(const WaveguideGeometry& geom,
                                               double density, double length,
                                               std::uint64_t stream_seed);

/// Stationary field at r_d: the direct source term plus the field re-radiated
/// by every excited dipole.  Overall constants cancel in T = I/I0 and are 1.
[[nodiscard]] Vec3c field_at_point(const Realization& real,
                                   const Eigen::VectorXcd& b,
                                   const SourceSpec& source, const Vec3& r_d,
                                   double k, const KernelOptions& opts);

/// One realization's transmission T = I/I0: grid-averaged total intensity
/// with the ensemble present over the same with the ensemble absent.
[[nodiscard]] double transmission_one(const Realization& real,
                                      const SourceSpec& source,
                                      const DetectorGrid& detector, double k,
                                      const KernelOptions& opts);

/// Scans T(L) over config.lengths with config.realizations_per_l samples per
/// point.  Realizations run concurrently; aggregation is index-ordered, so
/// the curve is bitwise identical for a fixed master seed regardless of the
/// thread count.  Per-realization failures are counted; a point keeps its
/// averages only while failures stay within 10%.
[[nodiscard]] TransmissionCurve scan_curve(const SimulationConfig& config);

}  // namespace wgdipole

#endif
