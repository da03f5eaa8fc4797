// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_IO_HPP
#define WGDIPOLE_IO_HPP

#include <string>

#include "wgdipole/analysis.hpp"
#include "wgdipole/transport.hpp"

namespace wgdipole {

/// Shortest exact decimal form used for every floating-point value we emit
/// ("%.17g" round-trips IEEE doubles bit-for-bit).
[[nodiscard]] std::string format_double(double value);

/// Creates the directory (and parents) if needed; throws IoError on failure.
void ensure_directory(const std::string& path);

/// Truncating whole-file write with error checking; throws IoError.
void write_text_file(const std::string& path, const std::string& text);

/// Writes "L,T_mean,T_stderr,T_geomean,n_realizations" rows, one per curve
/// point, with %.17g values so reading the file back is lossless.
void write_curve_csv(const std::string& path, const TransmissionCurve& curve);

/// Inverse of write_curve_csv.  Only the five stored columns are recovered;
/// metadata fields (seeds, timings, failure counts) take default values.
[[nodiscard]] TransmissionCurve read_curve_csv(const std::string& path);

/// Writes both scaling fits and the selected regime:
///   {"fit_window": {...},
///    "exponential": {"T0":..,"T0_err":..,"l_loc":..,"l_loc_err":..,
///                    "residual_sum":..,"residual_per_dof":..,"n_points":..},
///    "hyperbolic":  {"c":..,"c_err":..,"L0":..,"L0_err":.., ...},
///    "regime": "localization" | "diffusive" | "ambiguous"}
void write_fits_json(const std::string& path, const ScalingFit& fit_exp,
                     const ScalingFit& fit_hyp, Regime regime, double l_min,
                     double l_max);

/// Run provenance: full config snapshot, build version, per-point stream
/// seeds, realization failure counts, wall timings, and the generation
/// timestamp.  This is the only output file carrying a timestamp, so every
/// other artifact of a rerun is byte-identical.
void write_manifest_json(const std::string& path, const SimulationConfig& config,
                         const TransmissionCurve& curve);

/// Gnuplot-friendly companions: plot_linear.dat holds "L T_mean" and
/// plot_log.dat holds "L ln(T_mean)" (points with non-positive mean are
/// skipped in the log file).
void write_plot_files(const std::string& out_dir, const TransmissionCurve& curve);

}  // namespace wgdipole

#endif
