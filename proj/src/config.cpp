// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgdipole/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "wgdipole/errors.hpp"

namespace wgdipole {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> known = {
      {"geometry", {"a", "b"}},
      {"medium", {"density", "detuning"}},
      {"source", {"x", "y", "z", "orientation"}},
      {"detector", {"z_offset", "nx", "ny"}},
      {"scan", {"lengths", "realizations_per_l"}},
      {"kernel",
       {"image_truncation_radius", "damping_parameter",
        "mode_evanescent_cutoff", "crossover_dz"}},
      {"rng", {"master_seed"}},
  };
  return known;
}

std::string trim(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  std::size_t last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

int levenshtein(const std::string& a, const std::string& b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int substitution = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      diagonal = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, substitution});
    }
  }
  return row[b.size()];
}

std::string suggest(const std::string& name, const std::vector<std::string>& candidates) {
  int best_distance = 3;  // only suggest reasonably close names
  std::string best;
  for (const std::string& candidate : candidates) {
    const int distance = levenshtein(name, candidate);
    if (distance < best_distance) {
      best_distance = distance;
      best = candidate;
    }
  }
  if (best.empty()) return "";
  return "; did you mean '" + best + "'?";
}

Document parse_document(const std::string& text, const std::string& origin) {
  Document document;
  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const std::string where = origin + ":" + std::to_string(line_number);
    const std::size_t comment = raw.find_first_of("#;");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(where + ": unterminated section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (schema().find(section) == schema().end()) {
        std::vector<std::string> names;
        for (const auto& [known_section, keys] : schema()) names.push_back(known_section);
        throw ConfigError(where + ": unknown section [" + section + "]" +
                          suggest(section, names));
      }
      document[section];  // remember even if empty
      continue;
    }
    const std::size_t equals = line.find('=');
    if (equals == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    }
    if (section.empty()) {
      throw ConfigError(where + ": key outside any [section]");
    }
    const std::string key = trim(line.substr(0, equals));
    const std::string value = trim(line.substr(equals + 1));
    if (key.empty()) {
      throw ConfigError(where + ": empty key name");
    }
    const std::vector<std::string>& keys = schema().at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where + ": unknown key '" + key + "' in section [" +
                        section + "]" + suggest(key, keys));
    }
    auto [it, inserted] = document[section].emplace(key, Entry{value, line_number});
    if (!inserted) {
      throw ConfigError(where + ": duplicate key '" + section + "." + key +
                        "' (first set on line " + std::to_string(it->second.line) + ")");
    }
  }
  return document;
}

const Entry* find_entry(const Document& document, const std::string& section,
                        const std::string& key) {
  auto section_it = document.find(section);
  if (section_it == document.end()) return nullptr;
  auto key_it = section_it->second.find(key);
  if (key_it == section_it->second.end()) return nullptr;
  return &key_it->second;
}

double parse_double(const std::string& qualified, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double parsed = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || value.empty()) {
    throw ConfigError(qualified + ": expected a real number, got '" + value + "'");
  }
  return parsed;
}

int parse_int(const std::string& qualified, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const long parsed = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || value.empty()) {
    throw ConfigError(qualified + ": expected an integer, got '" + value + "'");
  }
  return static_cast<int>(parsed);
}

std::uint64_t parse_u64(const std::string& qualified, const std::string& value) {
  if (value.empty() || value[0] == '-') {
    throw ConfigError(qualified + ": expected an unsigned integer, got '" + value + "'");
  }
  const char* begin = value.c_str();
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ConfigError(qualified + ": expected an unsigned integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(parsed);
}

std::vector<double> parse_double_list(const std::string& qualified,
                                      const std::string& value) {
  std::vector<double> values;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    const std::string trimmed = trim(item);
    if (trimmed.empty()) {
      throw ConfigError(qualified + ": empty item in list '" + value + "'");
    }
    values.push_back(parse_double(qualified, trimmed));
  }
  if (values.empty()) {
    throw ConfigError(qualified + ": expected a comma-separated list, got '" +
                      value + "'");
  }
  return values;
}

}  // namespace

SimulationConfig parse_config_text(const std::string& text, const std::string& origin) {
  const Document document = parse_document(text, origin);

  static const std::vector<std::pair<std::string, std::string>> required = {
      {"geometry", "a"},
      {"geometry", "b"},
      {"medium", "density"},
      {"medium", "detuning"},
      {"scan", "lengths"},
  };
  std::string missing;
  for (const auto& [section, key] : required) {
    if (find_entry(document, section, key) == nullptr) {
      if (!missing.empty()) missing += ", ";
      missing += section + "." + key;
    }
  }
  if (!missing.empty()) {
    throw ConfigError(origin + ": missing required keys: " + missing);
  }

  SimulationConfig config;
  const auto read_double = [&](const std::string& section, const std::string& key,
                               double fallback) {
    const Entry* entry = find_entry(document, section, key);
    if (entry == nullptr) return fallback;
    return parse_double(section + "." + key, entry->value);
  };
  const auto read_int = [&](const std::string& section, const std::string& key,
                            int fallback) {
    const Entry* entry = find_entry(document, section, key);
    if (entry == nullptr) return fallback;
    return parse_int(section + "." + key, entry->value);
  };

  config.geom.a = read_double("geometry", "a", 0.0);
  config.geom.b = read_double("geometry", "b", 0.0);
  config.density = read_double("medium", "density", 0.0);
  config.detuning = read_double("medium", "detuning", 0.0);
  config.lengths = parse_double_list(
      "scan.lengths", find_entry(document, "scan", "lengths")->value);
  config.realizations_per_l = read_int("scan", "realizations_per_l",
                                       config.realizations_per_l);

  const Entry* source_x = find_entry(document, "source", "x");
  const Entry* source_y = find_entry(document, "source", "y");
  if ((source_x == nullptr) != (source_y == nullptr)) {
    throw ConfigError(origin +
                      ": source.x and source.y must be given together");
  }
  if (source_x != nullptr) {
    config.source.position.x() = parse_double("source.x", source_x->value);
    config.source.position.y() = parse_double("source.y", source_y->value);
    config.source_xy_explicit = true;
  }
  config.source.position.z() =
      read_double("source", "z", config.source.position.z());
  if (const Entry* orientation = find_entry(document, "source", "orientation")) {
    const std::vector<double> parts =
        parse_double_list("source.orientation", orientation->value);
    if (parts.size() != 3) {
      throw ConfigError("source.orientation: expected 3 components, got " +
                        std::to_string(parts.size()));
    }
    config.source.orientation = Vec3(parts[0], parts[1], parts[2]);
    const double norm = config.source.orientation.norm();
    if (!(norm > 0.0)) {
      throw ConfigError("source.orientation: zero vector is not a valid polarization");
    }
    config.source.orientation /= norm;
  }

  config.detector.z_offset =
      read_double("detector", "z_offset", config.detector.z_offset);
  config.detector.nx = read_int("detector", "nx", config.detector.nx);
  config.detector.ny = read_int("detector", "ny", config.detector.ny);

  config.kernel.image_truncation_radius =
      read_int("kernel", "image_truncation_radius",
               config.kernel.image_truncation_radius);
  config.kernel.damping_parameter = read_double(
      "kernel", "damping_parameter", config.kernel.damping_parameter);
  config.kernel.mode_evanescent_cutoff =
      read_double("kernel", "mode_evanescent_cutoff",
                  config.kernel.mode_evanescent_cutoff);
  config.kernel.crossover_dz =
      read_double("kernel", "crossover_dz", config.kernel.crossover_dz);

  if (const Entry* seed = find_entry(document, "rng", "master_seed")) {
    config.master_seed = parse_u64("rng.master_seed", seed->value);
  }

  config.validate();
  return config;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::vector<WaveguideGeometry> parse_geometry_list(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open geometry list '" + path + "'");
  }
  std::vector<WaveguideGeometry> geometries;
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const std::size_t comment = raw.find_first_of("#;");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected 'a b' per line, got '" + line + "'");
    }
    if (!(a > 0.0) || !(b > 0.0)) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": cross-section sides must be positive");
    }
    geometries.push_back(WaveguideGeometry{a, b});
  }
  return geometries;
}

}  // namespace wgdipole
