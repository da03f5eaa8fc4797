// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include <complex>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "wgdipole/analysis.hpp"
#include "wgdipole/config.hpp"
#include "wgdipole/errors.hpp"
#include "wgdipole/io.hpp"
#include "wgdipole/runner.hpp"
#include "wgdipole/units.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_io = 4;

struct CommonRunArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

void apply_thread_count(int threads) {
  if (threads <= 0) return;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#else
  std::cerr << "note: built without OpenMP; --threads has no effect\n";
#endif
}

wgdipole::SimulationConfig load_run_config(const CommonRunArgs& args) {
  wgdipole::SimulationConfig config = wgdipole::load_config(args.config_path);
  if (args.seed_given) config.master_seed = args.seed;
  return config;
}

void print_regime_summary(const wgdipole::ExperimentResult& result) {
  std::cout << "regime: " << wgdipole::regime_name(result.regime) << "\n";
  std::cout << "exponential: T0=" << wgdipole::format_double(result.fit_exp.p0)
            << " l_loc=" << wgdipole::format_double(result.fit_exp.p1)
            << " residual_per_dof="
            << wgdipole::format_double(result.fit_exp.residual_per_dof())
            << "\n";
  std::cout << "hyperbolic: c=" << wgdipole::format_double(result.fit_hyp.p0)
            << " L0=" << wgdipole::format_double(result.fit_hyp.p1)
            << " residual_per_dof="
            << wgdipole::format_double(result.fit_hyp.residual_per_dof())
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Stationary light transport through random point scatterers in a "
      "rectangular waveguide"};
  app.require_subcommand(1);

  CommonRunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Scan T(L) for one configuration, fit scaling laws, write outputs");
  run->add_option("config", run_args.config_path, "experiment config file")
      ->required();
  run->add_option("--out", run_args.out_dir, "output directory (default: out)");
  run->add_option("--seed", run_args.seed, "override rng.master_seed")
      ->each([&run_args](const std::string&) { run_args.seed_given = true; });
  run->add_option("--threads", run_args.threads, "OpenMP thread count");

  CommonRunArgs sweep_args;
  std::string geometries_path;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Repeat the experiment across waveguide cross sections");
  sweep->add_option("config", sweep_args.config_path, "base experiment config")
      ->required();
  sweep->add_option("--geometries", geometries_path,
                    "file with one 'a b' cross section per line")
      ->required();
  sweep->add_option("--out", sweep_args.out_dir, "output directory (default: out)");
  sweep->add_option("--seed", sweep_args.seed, "override rng.master_seed")
      ->each([&sweep_args](const std::string&) { sweep_args.seed_given = true; });
  sweep->add_option("--threads", sweep_args.threads, "OpenMP thread count");

  double modes_a = 0.0;
  double modes_b = 0.0;
  double modes_k = wgdipole::k0;
  CLI::App* modes = app.add_subcommand(
      "modes", "List propagating modes of an empty guide at frequency k");
  modes->add_option("--a", modes_a, "cross-section width")->required();
  modes->add_option("--b", modes_b, "cross-section height")->required();
  modes->add_option("--k", modes_k, "frequency (default: the atomic resonance)");

  double mfp_density = 0.0;
  double mfp_detuning = 0.0;
  CLI::App* mfp = app.add_subcommand(
      "mfp", "Photon mean free path for a density and detuning");
  mfp->add_option("--n", mfp_density, "scatterer density")->required();
  mfp->add_option("--delta", mfp_detuning, "source detuning")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    // --help lands here too; CLI11 encodes success as exit code 0.
    const int code = app.exit(error);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (run->parsed()) {
      apply_thread_count(run_args.threads);
      const wgdipole::SimulationConfig config = load_run_config(run_args);
      const wgdipole::ExperimentResult result =
          wgdipole::run_experiment(config, run_args.out_dir);
      print_regime_summary(result);
      std::cout << "wrote " << run_args.out_dir << "/curve.csv, fits.json, "
                << "manifest.json, plot_linear.dat, plot_log.dat\n";
    } else if (sweep->parsed()) {
      apply_thread_count(sweep_args.threads);
      const wgdipole::SimulationConfig base = load_run_config(sweep_args);
      const std::vector<wgdipole::WaveguideGeometry> geometries =
          wgdipole::parse_geometry_list(geometries_path);
      const std::vector<wgdipole::SweepRow> rows =
          wgdipole::sweep_geometry(base, geometries, sweep_args.out_dir);
      for (const wgdipole::SweepRow& row : rows) {
        std::cout << "a=" << wgdipole::format_double(row.geom.a)
                  << " b=" << wgdipole::format_double(row.geom.b)
                  << " modes=" << row.n_propagating << " ";
        if (row.ok) {
          std::cout << "regime=" << wgdipole::regime_name(row.regime) << "\n";
        } else {
          std::cout << "failed: " << row.error << "\n";
        }
      }
      std::cout << "wrote " << sweep_args.out_dir << "/sweep.csv\n";
    } else if (modes->parsed()) {
      const wgdipole::WaveguideGeometry geom{modes_a, modes_b};
      geom.validate();
      if (!(modes_k > 0.0)) {
        throw wgdipole::ConfigError("modes: k must be positive");
      }
      const std::vector<wgdipole::Mode> list =
          wgdipole::propagating_modes(geom, modes_k);
      for (const wgdipole::Mode& mode : list) {
        const std::complex<double> kz =
            wgdipole::longitudinal_wavenumber(modes_k, mode.kc);
        std::cout << mode.label()
                  << " kc=" << wgdipole::format_double(mode.kc)
                  << " kz=" << wgdipole::format_double(kz.real()) << "\n";
      }
      std::cout << list.size() << " propagating mode"
                << (list.size() == 1 ? "" : "s") << "\n";
    } else if (mfp->parsed()) {
      std::cout << wgdipole::format_double(
                       wgdipole::mean_free_path(mfp_density, mfp_detuning))
                << "\n";
    }
  } catch (const wgdipole::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return exit_config;
  } catch (const wgdipole::NumericalError& error) {
    std::cerr << "numerical error: " << error.what() << "\n";
    return exit_numerical;
  } catch (const wgdipole::IoError& error) {
    std::cerr << "io error: " << error.what() << "\n";
    return exit_io;
  }
  return exit_ok;
}
