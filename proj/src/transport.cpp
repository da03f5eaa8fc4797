// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "wgdipole/errors.hpp"
#include "wgdipole/units.hpp"

namespace wgdipole {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform_open() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t realization_stream_seed(std::uint64_t master_seed,
                                      std::size_t l_index,
                                      std::size_t realization_index) {
  const std::uint64_t keyed_l =
      mix64(master_seed ^ (0x9E3779B97F4A7C15ull * (l_index + 1)));
  return mix64(keyed_l ^ (0xD1B54A32D192ED03ull * (realization_index + 1)));
}

void DetectorGrid::validate() const {
  if (nx < 8 || ny < 8) {
    throw ConfigError("detector grid must be at least 8x8");
  }
  if (!(z_offset >= 50.0)) {
    throw ConfigError(
        "detector z_offset must be >= 50 (beyond the evanescent range)");
  }
}

void SimulationConfig::validate() const {
  geom.validate();
  if (!(density > 0.0)) throw ConfigError("density must be positive");
  if (!std::isfinite(detuning)) throw ConfigError("detuning must be finite");
  if (lengths.empty()) throw ConfigError("scan needs at least one length");
  double prev = 0.0;
  for (double l : lengths) {
    if (!(l > prev)) {
      throw ConfigError("scan lengths must be positive and strictly ascending");
    }
    prev = l;
  }
  if (realizations_per_l < 1) {
    throw ConfigError("realizations_per_l must be at least 1");
  }
  detector.validate();
  resolved_source().validate(geom);
}

SourceSpec SimulationConfig::resolved_source() const {
  SourceSpec s = source;
  s.detuning = detuning;
  if (!source_xy_explicit) {
    // Default transverse position: the cross-section center, which couples
    // maximally to the TE10 mode and tracks geometry changes during sweeps.
    s.position.x() = 0.5 * geom.a;
    s.position.y() = 0.5 * geom.b;
  }
  return s;
}

Realization generate_realization(const WaveguideGeometry& geom, double density,
                                 double length, std::uint64_t stream_seed) {
  geom.validate();
  if (!(density > 0.0) || !(length > 0.0)) {
    throw ConfigError("generate_realization: density and length must be positive");
  }
  const long n_atoms = std::lround(density * geom.a * geom.b * length);

  Realization real;
  real.geom = geom;
  real.sample_length = length;
  real.seed_tag = stream_seed;
  real.positions.reserve(static_cast<std::size_t>(n_atoms));

  SplitMix64 rng(stream_seed);
  constexpr int max_attempts = 10000;
  const double r2_min = min_pair_separation * min_pair_separation;
  for (long i = 0; i < n_atoms; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      const Vec3 cand(geom.a * rng.uniform_open(), geom.b * rng.uniform_open(),
                      length * rng.uniform_open());
      bool clear = true;
      for (const Vec3& p : real.positions) {
        if ((cand - p).squaredNorm() < r2_min) {
          clear = false;
          break;
        }
      }
      if (clear) {
        real.positions.push_back(cand);
        placed = true;
        break;
      }
    }
    if (!placed) {
      std::ostringstream msg;
      msg << "generate_realization: could not place atom " << i << " of "
          << n_atoms << " after " << max_attempts
          << " attempts; density too high for the minimum separation "
          << min_pair_separation;
      throw ConfigError(msg.str());
    }
  }
  return real;
}

Vec3c field_at_point(const Realization& real, const Eigen::VectorXcd& b,
                     const SourceSpec& source, const Vec3& r_d, double k,
                     const KernelOptions& opts) {
  if (b.size() != 3 * real.n_atoms()) {
    throw ConfigError("field_at_point: amplitude vector does not match realization");
  }
  if (r_d == source.position) {
    throw ConfigError("field_at_point: detector coincides with the source");
  }
  const Vec3 unit = source.orientation.normalized();
  Vec3c field =
      waveguide_dyadic(r_d, source.position, real.geom, k, opts) *
      unit.cast<std::complex<double>>();
  for (int e = 0; e < real.n_atoms(); ++e) {
    if (r_d == real.positions[e]) {
      throw ConfigError("field_at_point: detector coincides with an atom");
    }
    field += waveguide_dyadic(r_d, real.positions[e], real.geom, k, opts) *
             b.segment<3>(3 * e);
  }
  return field;
}

double transmission_one(const Realization& real, const SourceSpec& source,
                        const DetectorGrid& detector, double k,
                        const KernelOptions& opts) {
  detector.validate();
  source.validate(real.geom);
  const Eigen::MatrixXcd sigma = assemble_sigma(real, k, opts);
  const Eigen::VectorXcd b =
      stationary_amplitudes(sigma, real, source, k, opts);

  const double z_d = real.sample_length + detector.z_offset;
  const Vec3 unit = source.orientation.normalized();
  double intensity = 0.0;
  double intensity_empty = 0.0;
  for (int ix = 0; ix < detector.nx; ++ix) {
    const double x = (ix + 0.5) * real.geom.a / detector.nx;
    for (int iy = 0; iy < detector.ny; ++iy) {
      const double y = (iy + 0.5) * real.geom.b / detector.ny;
      const Vec3 r_d(x, y, z_d);
      const Vec3c direct =
          waveguide_dyadic(r_d, source.position, real.geom, k, opts) *
          unit.cast<std::complex<double>>();
      Vec3c field = direct;
      for (int e = 0; e < real.n_atoms(); ++e) {
        field += waveguide_dyadic(r_d, real.positions[e], real.geom, k, opts) *
                 b.segment<3>(3 * e);
      }
      intensity += field.squaredNorm();
      intensity_empty += direct.squaredNorm();
    }
  }
  if (!(intensity_empty > 0.0)) {
    throw NumericalError(
        "transmission_one: incident intensity averaged to zero on the detector");
  }
  return intensity / intensity_empty;
}

TransmissionCurve scan_curve(const SimulationConfig& config) {
  config.validate();
  const SourceSpec source = config.resolved_source();
  const int reals = config.realizations_per_l;

  TransmissionCurve curve;
  curve.points.reserve(config.lengths.size());
  for (std::size_t li = 0; li < config.lengths.size(); ++li) {
    const double length = config.lengths[li];
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> t_values(static_cast<std::size_t>(reals), 0.0);
    std::vector<unsigned char> failed(static_cast<std::size_t>(reals), 0);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < reals; ++r) {
      try {
        const std::uint64_t seed =
            realization_stream_seed(config.master_seed, li,
                                    static_cast<std::size_t>(r));
        const Realization real =
            generate_realization(config.geom, config.density, length, seed);
        const double t = transmission_one(real, source, config.detector, k0,
                                          config.kernel);
        if (!std::isfinite(t) || !(t > 0.0)) {
          throw NumericalError("non-finite or non-positive transmission");
        }
        t_values[static_cast<std::size_t>(r)] = t;
      } catch (const std::exception&) {
        failed[static_cast<std::size_t>(r)] = 1;
      }
    }

    // Index-ordered aggregation: bitwise deterministic for any thread count.
    CurvePoint point;
    point.length = length;
    point.point_seed = realization_stream_seed(config.master_seed, li, 0);
    double sum = 0.0;
    double sum_log = 0.0;
    int n_ok = 0;
    for (int r = 0; r < reals; ++r) {
      if (failed[static_cast<std::size_t>(r)]) continue;
      sum += t_values[static_cast<std::size_t>(r)];
      sum_log += std::log(t_values[static_cast<std::size_t>(r)]);
      ++n_ok;
    }
    point.n_realizations = n_ok;
    point.n_failed = reals - n_ok;
    point.valid = (point.n_failed <= reals / 10);
    if (n_ok > 0) {
      point.t_mean = sum / n_ok;
      point.t_geomean = std::exp(sum_log / n_ok);
      double ss = 0.0;
      for (int r = 0; r < reals; ++r) {
        if (failed[static_cast<std::size_t>(r)]) continue;
        const double d = t_values[static_cast<std::size_t>(r)] - point.t_mean;
        ss += d * d;
      }
      point.t_stderr =
          (n_ok > 1) ? std::sqrt(ss / (n_ok - 1) / n_ok) : 0.0;
    } else {
      point.valid = false;
    }
    point.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace wgdipole
