// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wgdipole/errors.hpp"

#ifndef WGDIPOLE_VERSION
#define WGDIPOLE_VERSION "0.0.0"
#endif

namespace wgdipole {

namespace {

constexpr const char* curve_header = "L,T_mean,T_stderr,T_geomean,n_realizations";

/// JSON has no representation for NaN/Inf; emit null for those.
std::string json_number(double value) {
  if (!std::isfinite(value)) return "null";
  return format_double(value);
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string fit_json_object(const ScalingFit& fit) {
  const bool exponential = fit.model == ScalingModel::exponential;
  const char* p0_name = exponential ? "T0" : "c";
  const char* p1_name = exponential ? "l_loc" : "L0";
  std::ostringstream out;
  out << "{\n"
      << "    \"model\": \"" << (exponential ? "exponential" : "hyperbolic")
      << "\",\n"
      << "    \"" << p0_name << "\": " << json_number(fit.p0) << ",\n"
      << "    \"" << p0_name << "_err\": " << json_number(fit.p0_err) << ",\n"
      << "    \"" << p1_name << "\": " << json_number(fit.p1) << ",\n"
      << "    \"" << p1_name << "_err\": " << json_number(fit.p1_err) << ",\n"
      << "    \"residual_sum\": " << json_number(fit.residual_sum) << ",\n"
      << "    \"residual_per_dof\": " << json_number(fit.residual_per_dof())
      << ",\n"
      << "    \"n_points\": " << fit.n_points << "\n"
      << "  }";
  return out.str();
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  stream << text;
  stream.flush();
  if (!stream) {
    throw IoError("failed while writing '" + path + "'");
  }
}

void ensure_directory(const std::string& path) {
  std::error_code code;
  std::filesystem::create_directories(path, code);
  if (code) {
    throw IoError("cannot create directory '" + path + "': " + code.message());
  }
}

void write_curve_csv(const std::string& path, const TransmissionCurve& curve) {
  std::ostringstream out;
  out << curve_header << "\n";
  for (const CurvePoint& point : curve.points) {
    out << format_double(point.length) << "," << format_double(point.t_mean)
        << "," << format_double(point.t_stderr) << ","
        << format_double(point.t_geomean) << "," << point.n_realizations
        << "\n";
  }
  write_text_file(path, out.str());
}

TransmissionCurve read_curve_csv(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open curve file '" + path + "'");
  }
  std::string line;
  if (!std::getline(stream, line)) {
    throw IoError("curve file '" + path + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != curve_header) {
    throw IoError("curve file '" + path + "' has header '" + line +
                  "', expected '" + curve_header + "'");
  }
  TransmissionCurve curve;
  int line_number = 1;
  while (std::getline(stream, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    CurvePoint point;
    const auto fail = [&]() {
      throw IoError("curve file '" + path + "' line " +
                    std::to_string(line_number) + " is malformed: '" + line + "'");
    };
    const char* cursor = line.c_str();
    const auto take_double = [&](double& into) {
      char* end = nullptr;
      into = std::strtod(cursor, &end);
      if (end == cursor) fail();
      cursor = end;
    };
    const auto take_comma = [&]() {
      if (*cursor != ',') fail();
      ++cursor;
    };
    take_double(point.length);
    take_comma();
    take_double(point.t_mean);
    take_comma();
    take_double(point.t_stderr);
    take_comma();
    take_double(point.t_geomean);
    take_comma();
    char* end = nullptr;
    point.n_realizations = static_cast<int>(std::strtol(cursor, &end, 10));
    if (end == cursor || *end != '\0') fail();
    curve.points.push_back(point);
  }
  return curve;
}

void write_fits_json(const std::string& path, const ScalingFit& fit_exp,
                     const ScalingFit& fit_hyp, Regime regime, double l_min,
                     double l_max) {
  std::ostringstream out;
  out << "{\n"
      << "  \"fit_window\": {\"l_min\": " << json_number(l_min)
      << ", \"l_max\": " << json_number(l_max) << "},\n"
      << "  \"exponential\": " << fit_json_object(fit_exp) << ",\n"
      << "  \"hyperbolic\": " << fit_json_object(fit_hyp) << ",\n"
      << "  \"regime\": \"" << regime_name(regime) << "\"\n"
      << "}\n";
  write_text_file(path, out.str());
}

void write_manifest_json(const std::string& path, const SimulationConfig& config,
                         const TransmissionCurve& curve) {
  const SourceSpec source = config.resolved_source();
  std::ostringstream out;
  out << "{\n"
      << "  \"version\": \"" << WGDIPOLE_VERSION << "\",\n"
      << "  \"generated_at\": \"" << iso8601_utc_now() << "\",\n"
      << "  \"master_seed\": " << config.master_seed << ",\n"
      << "  \"config\": {\n"
      << "    \"geometry\": {\"a\": " << json_number(config.geom.a)
      << ", \"b\": " << json_number(config.geom.b) << "},\n"
      << "    \"medium\": {\"density\": " << json_number(config.density)
      << ", \"detuning\": " << json_number(config.detuning) << "},\n"
      << "    \"source\": {\"x\": " << json_number(source.position.x())
      << ", \"y\": " << json_number(source.position.y())
      << ", \"z\": " << json_number(source.position.z())
      << ", \"orientation\": [" << json_number(source.orientation.x()) << ", "
      << json_number(source.orientation.y()) << ", "
      << json_number(source.orientation.z()) << "]"
      << ", \"xy_explicit\": " << (config.source_xy_explicit ? "true" : "false")
      << "},\n"
      << "    \"detector\": {\"z_offset\": "
      << json_number(config.detector.z_offset) << ", \"nx\": "
      << config.detector.nx << ", \"ny\": " << config.detector.ny << "},\n"
      << "    \"scan\": {\"lengths\": [";
  for (std::size_t i = 0; i < config.lengths.size(); ++i) {
    if (i != 0) out << ", ";
    out << json_number(config.lengths[i]);
  }
  out << "], \"realizations_per_l\": " << config.realizations_per_l << "},\n"
      << "    \"kernel\": {\"image_truncation_radius\": "
      << config.kernel.image_truncation_radius
      << ", \"damping_parameter\": "
      << json_number(config.kernel.damping_parameter)
      << ", \"mode_evanescent_cutoff\": "
      << json_number(config.kernel.mode_evanescent_cutoff)
      << ", \"crossover_dz\": " << json_number(config.kernel.crossover_dz)
      << "}\n"
      << "  },\n"
      << "  \"points\": [";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const CurvePoint& point = curve.points[i];
    out << (i == 0 ? "" : ",") << "\n    {\"length\": "
        << json_number(point.length) << ", \"stream_seed\": "
        << point.point_seed << ", \"n_realizations\": " << point.n_realizations
        << ", \"n_failed\": " << point.n_failed << ", \"valid\": "
        << (point.valid ? "true" : "false") << ", \"wall_seconds\": "
        << json_number(point.wall_seconds) << "}";
  }
  out << "\n  ]\n}\n";
  write_text_file(path, out.str());
}

void write_plot_files(const std::string& out_dir, const TransmissionCurve& curve) {
  std::ostringstream linear;
  std::ostringstream logged;
  linear << "# L T_mean\n";
  logged << "# L ln_T_mean\n";
  for (const CurvePoint& point : curve.points) {
    linear << format_double(point.length) << " " << format_double(point.t_mean)
           << "\n";
    if (point.t_mean > 0.0) {
      logged << format_double(point.length) << " "
             << format_double(std::log(point.t_mean)) << "\n";
    }
  }
  write_text_file(out_dir + "/plot_linear.dat", linear.str());
  write_text_file(out_dir + "/plot_log.dat", logged.str());
}

}  // namespace wgdipole
