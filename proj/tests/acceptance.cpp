// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance gate.  Each criterion prints exactly one PASS/FAIL
// line; the binary exits nonzero if any fail.  Tolerances are fixed here in
// code — they are the contract, not knobs.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>

#include "wgdipole/analysis.hpp"
#include "wgdipole/green_waveguide.hpp"
#include "wgdipole/io.hpp"
#include "wgdipole/sigma.hpp"
#include "wgdipole/solve.hpp"
#include "wgdipole/transport.hpp"
#include "wgdipole/units.hpp"

namespace {

using wgdipole::Vec3;

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) return "";
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

class Gate {
 public:
  void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    ++index_;
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& error) {
      detail = std::string("exception: ") + error.what();
    }
    std::ostringstream line;
    line << "[" << index_ << "/9] " << name << " ";
    for (std::size_t i = line.str().size(); i < 58; ++i) line << ".";
    line << (ok ? " PASS" : " FAIL");
    if (!detail.empty()) line << "  (" << detail << ")";
    std::cout << line.str() << std::endl;
    if (!ok) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  int index_ = 0;
  int failures_ = 0;
};

std::string arg_value(int argc, char** argv, const std::string& flag) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (flag == argv[i]) return argv[i + 1];
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = arg_value(argc, argv, "--cli");
  const std::string unit_tests = arg_value(argc, argv, "--unit-tests");
  const std::string presets = arg_value(argc, argv, "--presets");
  const std::string out = arg_value(argc, argv, "--out");
  if (cli.empty() || unit_tests.empty() || presets.empty() || out.empty()) {
    std::cerr << "usage: wgdipole_acceptance --cli PATH --unit-tests PATH "
                 "--presets DIR --out DIR\n";
    return 2;
  }
  wgdipole::ensure_directory(out);

  Gate gate;

  gate.criterion("mode census through the CLI", [&](std::string& detail) {
    const CommandResult narrow = run_command("'" + cli + "' modes --a 4 --b 2");
    const CommandResult wide = run_command("'" + cli + "' modes --a 8 --b 8");
    detail = "single-mode and ten-mode censuses with frozen TE10 kz";
    if (narrow.exit_code != 0 || wide.exit_code != 0) {
      detail = "CLI exited with " + std::to_string(narrow.exit_code) + "/" +
               std::to_string(wide.exit_code);
      return false;
    }
    const bool narrow_ok =
        narrow.output.find("1 propagating mode") != std::string::npos &&
        narrow.output.find("TE10") != std::string::npos &&
        narrow.output.find("kz=0.61899089244") != std::string::npos;
    const bool wide_ok =
        wide.output.find("10 propagating modes") != std::string::npos;
    if (!narrow_ok || !wide_ok) {
      detail = "unexpected census output";
      return false;
    }
    return true;
  });

  gate.criterion("mean free path through the CLI", [&](std::string& detail) {
    const CommandResult result =
        run_command("'" + cli + "' mfp --n 0.002 --delta 1");
    if (result.exit_code != 0) {
      detail = "CLI exited with " + std::to_string(result.exit_code);
      return false;
    }
    const double value = std::strtod(result.output.c_str(), nullptr);
    std::ostringstream note;
    note << "got " << value << ", want 132.63 +- 0.5";
    detail = note.str();
    return std::abs(value - 132.63) <= 0.5;
  });

  gate.criterion("propagator routes cross-validate", [&](std::string& detail) {
    const wgdipole::WaveguideGeometry guide{4.0, 2.0};
    wgdipole::KernelOptions strict;
    strict.damping_parameter = 64.0;
    strict.image_truncation_radius = 340;
    wgdipole::SplitMix64 rng(7777);
    double worst = 0.0;
    int checked = 0;
    for (int step = 0; step < 10; ++step) {
      const double dz = 0.5 * std::pow(40.0, step / 9.0);
      for (int pair = 0; pair < 10; ++pair) {
        const Vec3 r(guide.a * (0.1 + 0.8 * rng.uniform_open()),
                     guide.b * (0.1 + 0.8 * rng.uniform_open()), 0.0);
        const Vec3 rp(guide.a * (0.1 + 0.8 * rng.uniform_open()),
                      guide.b * (0.1 + 0.8 * rng.uniform_open()), dz);
        const wgdipole::Mat3c by_images =
            wgdipole::image_sum_dyadic(r, rp, guide, wgdipole::k0, strict);
        const wgdipole::Mat3c by_modes =
            wgdipole::mode_sum_dyadic(r, rp, guide, wgdipole::k0, strict);
        const double rel = (by_images - by_modes).norm() / by_modes.norm();
        worst = std::max(worst, rel);
        ++checked;
      }
    }
    std::ostringstream note;
    note << checked << " pairs over dz in [0.5, 20], worst rel " << worst
         << ", bound 1e-6";
    detail = note.str();
    return checked == 100 && worst <= 1e-6;
  });

  gate.criterion("collective spectra are passive", [&](std::string& detail) {
    // A near-contact pair pushes |eigenvalue| to ~||Sigma|| (the 1/r^3 shift)
    // while the rates stay O(1) in its imaginary part, so no double-precision
    // eigensolver can resolve a rate below ~eps * ||Sigma||.  The 1e-8 bounds
    // therefore apply on top of that per-matrix rounding floor; for typical
    // ensembles (||Sigma|| ~ 30) the floor is ~1e-12 and the bounds stay sharp.
    const wgdipole::WaveguideGeometry guide{4.0, 2.0};
    const wgdipole::KernelOptions opts;
    double worst_rate = 0.0;
    double worst_trace = 0.0;
    double max_floor = 0.0;
    int max_atoms = 0;
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
      const double length = 60.0 + 36.0 * i;
      const wgdipole::Realization real = wgdipole::generate_realization(
          guide, 2e-3, length, wgdipole::realization_stream_seed(424242, 4, i));
      if (real.n_atoms() == 0) continue;
      max_atoms = std::max(max_atoms, real.n_atoms());
      const Eigen::MatrixXcd sigma =
          wgdipole::assemble_sigma(real, wgdipole::k0, opts);
      const double floor = 3.0 * static_cast<double>(sigma.rows()) *
                           std::numeric_limits<double>::epsilon() * sigma.norm();
      max_floor = std::max(max_floor, floor);
      const auto spectrum = wgdipole::collective_spectrum(sigma);
      double rate_sum = 0.0;
      double min_rate = 0.0;
      for (const auto& [shift, rate] : spectrum) {
        min_rate = std::min(min_rate, rate);
        rate_sum += rate;
      }
      const double trace_rate = -2.0 * sigma.trace().imag();
      const double mismatch = std::abs(rate_sum - trace_rate) /
                              (1.0 + std::abs(trace_rate));
      worst_rate = std::min(worst_rate, min_rate);
      worst_trace = std::max(worst_trace, mismatch);
      if (min_rate < -(1e-8 + floor) ||
          mismatch > 1e-8 + floor / (1.0 + std::abs(trace_rate))) {
        ok = false;
      }
    }
    std::ostringstream note;
    note << "50 ensembles up to N=" << max_atoms << ": min rate " << worst_rate
         << ", trace mismatch " << worst_trace
         << " (bounds 1e-8 + rounding floor, max floor " << max_floor << ")";
    detail = note.str();
    return ok && max_atoms <= 30 && max_atoms >= 25;
  });

  gate.criterion("stationary solve matches relaxation dynamics",
                 [&](std::string& detail) {
    // Dynamical cross-validation only terminates when every driven
    // collective mode relaxes within the integration budget, so systems are
    // screened by their spectral gap first (eigenvalues only; the screening
    // never looks at the quantity under test).  Single-mode guides make
    // near-dark driven modes common (the radiation coupling has rank two),
    // hence the scan.
    const wgdipole::WaveguideGeometry guide{4.0, 2.0};
    const wgdipole::KernelOptions opts;
    const double lengths[] = {120.0, 180.0, 240.0, 300.0};
    const double detuning = 1.0;
    wgdipole::SourceSpec source;
    source.position = Vec3(2.0, 1.0, -500.0);
    double worst = 0.0;
    int checked = 0;
    for (std::size_t ri = 0; checked < 20 && ri < 4000; ++ri) {
      for (std::size_t li = 0; li < 4 && checked < 20; ++li) {
        const wgdipole::Realization real = wgdipole::generate_realization(
            guide, 2e-3, lengths[li],
            wgdipole::realization_stream_seed(424242, li, ri));
        if (real.n_atoms() < 2 || real.n_atoms() > 5) continue;
        const Eigen::MatrixXcd sigma =
            wgdipole::assemble_sigma(real, wgdipole::k0, opts);
        // Near-contact pairs inflate ||Sigma|| and with it the RK4 step
        // count; they are exercised by the unit suites, not here.
        if (sigma.norm() > 100.0) continue;
        const Eigen::VectorXcd v =
            wgdipole::source_coupling_vector(real, source, wgdipole::k0, opts);
        const Eigen::VectorXcd direct =
            wgdipole::stationary_amplitudes(sigma, v, detuning);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(sigma);
        const Eigen::VectorXcd weights =
            es.eigenvectors().partialPivLu().solve(v);
        bool gapped = true;
        for (int j = 0; j < weights.size(); ++j) {
          const double rate = -2.0 * es.eigenvalues()(j).imag();
          const std::complex<double> pole =
              std::complex<double>(0.0, 1.0) * (es.eigenvalues()(j) - detuning);
          const double amplitude = std::abs(weights(j) / (pole - 5e-11));
          if (amplitude > 1e-9 * direct.norm() && rate < 1.5e-3) {
            gapped = false;
            break;
          }
        }
        if (!gapped) continue;
        wgdipole::TimeDomainOptions dynamics;
        dynamics.gamma_s = 1e-10;
        const Eigen::VectorXcd relaxed =
            wgdipole::time_domain_envelope(sigma, v, detuning, dynamics);
        worst = std::max(worst, (relaxed - direct).norm() / direct.norm());
        ++checked;
      }
    }
    std::ostringstream note;
    note << checked << " gapped systems (2 <= N <= 5), worst rel deviation "
         << worst << ", bound 1e-6";
    detail = note.str();
    return checked == 20 && worst <= 1e-6;
  });

  const std::string fig2a_dir = out + "/fig2a";
  gate.criterion("single-mode guide localizes", [&](std::string& detail) {
    const CommandResult run = run_command("'" + cli + "' run '" + presets +
                                          "/fig2a.cfg' --out '" + fig2a_dir + "'");
    if (run.exit_code != 0) {
      detail = "CLI exited with " + std::to_string(run.exit_code);
      return false;
    }
    const nlohmann::json fits =
        nlohmann::json::parse(slurp(fig2a_dir + "/fits.json"));
    const std::string regime = fits.at("regime").get<std::string>();
    const double l_loc = fits.at("exponential").at("l_loc").get<double>();
    const double t0 = fits.at("exponential").at("T0").get<double>();
    std::ostringstream note;
    note << "regime " << regime << ", l_loc " << l_loc
         << " (want 224 +- 20%), T0 " << t0 << " (want 0.51 +- 0.15)";
    detail = note.str();
    return regime == "localization" && std::abs(l_loc - 224.0) <= 44.8 &&
           std::abs(t0 - 0.51) <= 0.15;
  });

  const std::string fig2b_dir = out + "/fig2b";
  gate.criterion("multimode guide diffuses", [&](std::string& detail) {
    const CommandResult run = run_command("'" + cli + "' run '" + presets +
                                          "/fig2b.cfg' --out '" + fig2b_dir + "'");
    if (run.exit_code != 0) {
      detail = "CLI exited with " + std::to_string(run.exit_code);
      return false;
    }
    const nlohmann::json fits =
        nlohmann::json::parse(slurp(fig2b_dir + "/fits.json"));
    const std::string regime = fits.at("regime").get<std::string>();
    const double per_dof_exp =
        fits.at("exponential").at("residual_per_dof").get<double>();
    const double per_dof_hyp =
        fits.at("hyperbolic").at("residual_per_dof").get<double>();
    const double ratio = per_dof_exp / per_dof_hyp;
    std::ostringstream note;
    note << "regime " << regime << ", residual ratio exp/hyp " << ratio
         << " (want >= 2)";
    detail = note.str();
    return regime == "diffusive" && ratio >= 2.0;
  });

  gate.criterion("sweep flips localization to diffusion", [&](std::string& detail) {
    const std::string sweep_dir = out + "/sweep";
    const CommandResult run = run_command(
        "'" + cli + "' sweep '" + presets + "/fig2b.cfg' --geometries '" +
        presets + "/sweep_geometries.txt' --out '" + sweep_dir + "'");
    if (run.exit_code != 0) {
      detail = "CLI exited with " + std::to_string(run.exit_code);
      return false;
    }
    const std::string table = slurp(sweep_dir + "/sweep.csv");
    std::istringstream lines(table);
    std::string line;
    std::string narrow_regime;
    std::string wide_regime;
    while (std::getline(lines, line)) {
      if (line.rfind("4,2,", 0) == 0) {
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 5 && std::getline(fields, field, ','); ++i) {
          if (i == 4) narrow_regime = field;
        }
      }
      if (line.rfind("8,8,", 0) == 0) {
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 5 && std::getline(fields, field, ','); ++i) {
          if (i == 4) wide_regime = field;
        }
      }
    }
    detail = "4x2 -> " + narrow_regime + ", 8x8 -> " + wide_regime;
    return narrow_regime == "localization" && wide_regime == "diffusive";
  });

  gate.criterion("unit property suites all green", [&](std::string& detail) {
    const CommandResult run = run_command("'" + unit_tests + "'");
    detail = "exit code " + std::to_string(run.exit_code);
    return run.exit_code == 0;
  });

  if (gate.failures() == 0) {
    std::cout << "acceptance: all 9 criteria satisfied" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << gate.failures() << " criterion(s) failed"
            << std::endl;
  return 1;
}
