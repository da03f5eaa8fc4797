// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/runner.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

#include "wgdipole/errors.hpp"
#include "wgdipole/io.hpp"
#include "wgdipole/units.hpp"

namespace wgdipole {

namespace {

std::string compact_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

std::string geometry_dir_name(const WaveguideGeometry& geom) {
  return "a" + compact_number(geom.a) + "_b" + compact_number(geom.b);
}

/// Keeps the summary table single-line-per-row even for failure messages.
std::string csv_safe(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

}  // namespace

ExperimentResult run_experiment(const SimulationConfig& config,
                                const std::string& out_dir) {
  config.validate();
  ensure_directory(out_dir);

  ExperimentResult result;
  result.fit_window_min = default_fit_window_min(config.density, config.detuning);
  result.curve = scan_curve(config);

  const double l_max = std::numeric_limits<double>::infinity();
  result.fit_exp = fit_exponential(result.curve, result.fit_window_min, l_max);
  result.fit_hyp = fit_hyperbolic(result.curve, result.fit_window_min, l_max);
  result.regime = select_model(result.fit_exp, result.fit_hyp);

  write_curve_csv(out_dir + "/curve.csv", result.curve);
  write_fits_json(out_dir + "/fits.json", result.fit_exp, result.fit_hyp,
                  result.regime, result.fit_window_min, l_max);
  write_manifest_json(out_dir + "/manifest.json", config, result.curve);
  write_plot_files(out_dir, result.curve);
  return result;
}

std::vector<SweepRow> sweep_geometry(const SimulationConfig& base,
                                     const std::vector<WaveguideGeometry>& geometries,
                                     const std::string& out_dir) {
  ensure_directory(out_dir);

  std::vector<SweepRow> rows;
  rows.reserve(geometries.size());
  for (const WaveguideGeometry& geom : geometries) {
    SweepRow row;
    row.geom = geom;
    try {
      SimulationConfig config = base;
      config.geom = geom;
      row.n_propagating =
          static_cast<int>(propagating_modes(geom, k0).size());
      const ExperimentResult result =
          run_experiment(config, out_dir + "/" + geometry_dir_name(geom));
      row.fit_exp = result.fit_exp;
      row.fit_hyp = result.fit_hyp;
      row.regime = result.regime;
      row.ok = true;
    } catch (const std::exception& error) {
      row.ok = false;
      row.error = error.what();
    }
    rows.push_back(row);
  }

  std::ostringstream table;
  table << "a,b,n_propagating,status,regime,T0,l_loc,c,L0,error\n";
  for (const SweepRow& row : rows) {
    table << format_double(row.geom.a) << "," << format_double(row.geom.b)
          << "," << row.n_propagating << "," << (row.ok ? "ok" : "failed")
          << ",";
    if (row.ok) {
      table << regime_name(row.regime) << "," << format_double(row.fit_exp.p0)
            << "," << format_double(row.fit_exp.p1) << ","
            << format_double(row.fit_hyp.p0) << ","
            << format_double(row.fit_hyp.p1) << ",";
    } else {
      table << ",,,,," << csv_safe(row.error);
    }
    table << "\n";
  }
  write_text_file(out_dir + "/sweep.csv", table.str());
  return rows;
}

}  // namespace wgdipole
