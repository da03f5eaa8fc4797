// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_RUNNER_HPP
#define WGDIPOLE_RUNNER_HPP

#include <string>
#include <vector>

#include "wgdipole/analysis.hpp"
#include "wgdipole/transport.hpp"

namespace wgdipole {

struct ExperimentResult {
  TransmissionCurve curve;
  ScalingFit fit_exp;
  ScalingFit fit_hyp;
  Regime regime = Regime::ambiguous;
  double fit_window_min = 0.0;
};

/// Full pipeline for one configuration: scans T(L), fits both scaling laws
/// over L >= 2 * (mean free path), selects the regime, and writes curve.csv,
/// fits.json, manifest.json and the two plot files into out_dir (created if
/// missing).
ExperimentResult run_experiment(const SimulationConfig& config,
                                const std::string& out_dir);

struct SweepRow {
  WaveguideGeometry geom{0.0, 0.0};
  int n_propagating = 0;
  bool ok = false;
  std::string error;  ///< failure description when !ok
  ScalingFit fit_exp;
  ScalingFit fit_hyp;
  Regime regime = Regime::ambiguous;
};

/// Runs run_experiment once per cross section, holding everything in `base`
/// fixed except the geometry (the source recenters unless base pins it).
/// Per-geometry outputs land in out_dir/a<a>_b<b>/; a summary table goes to
/// out_dir/sweep.csv.  A failing geometry records its error and the sweep
/// continues; an empty geometry list yields an empty table.
std::vector<SweepRow> sweep_geometry(const SimulationConfig& base,
                                     const std::vector<WaveguideGeometry>& geometries,
                                     const std::string& out_dir);

}  // namespace wgdipole

#endif
