// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_CONFIG_HPP
#define WGDIPOLE_CONFIG_HPP

#include <string>
#include <vector>

#include "wgdipole/transport.hpp"

namespace wgdipole {

/// Parses an INI-style experiment description:
///
///   [geometry]          required: a, b
///   [medium]            required: density, detuning
///   [scan]              required: lengths (comma-separated, ascending)
///                       optional: realizations_per_l
///   [source]            optional: x, y, z, orientation ("ex,ey,ez")
///   [detector]          optional: z_offset, nx, ny
///   [kernel]            optional: image_truncation_radius,
///                       damping_parameter, mode_evanescent_cutoff,
///                       crossover_dz
///   [rng]               optional: master_seed
///
/// Comments start with '#' or ';'.  Unknown sections or keys are hard
/// errors (with a nearest-known-name suggestion); so are missing required
/// keys and malformed values.  Every error message names the offending key.
[[nodiscard]] SimulationConfig parse_config_text(const std::string& text,
                                                 const std::string& origin = "<string>");

/// Reads the file and forwards to parse_config_text.
[[nodiscard]] SimulationConfig load_config(const std::string& path);

/// Reads a whitespace-separated list of cross sections, one "a b" pair per
/// line; blank lines and '#' comments are skipped.
[[nodiscard]] std::vector<WaveguideGeometry> parse_geometry_list(const std::string& path);

}  // namespace wgdipole

#endif
