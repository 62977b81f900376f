#include "qmetric_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string_view>

namespace qmetric::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& section, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!section.is_object()) throw std::invalid_argument(std::string(where) + " must be an object");
  for (const auto& [key, value] : section.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument("unknown config key '" + std::string(where) + "." + key + "'");
    }
  }
}

template <typename T>
void read(const json& section, const char* key, T& target) {
  if (section.contains(key)) {
    try {
      target = section.at(key).get<T>();
    } catch (const json::exception&) {
      throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (schema != kConfigSchema) throw std::invalid_argument("unsupported config schema");
  if (!(grid.half_length > 0.0) || !std::isfinite(grid.half_length)) {
    throw std::invalid_argument("grid.half_length must be positive");
  }
  if (grid.num_points != 0 && grid.num_points < 3) {
    throw std::invalid_argument("grid.num_points must be at least 3");
  }
  if (family.source != "preset" && family.source != "random") {
    throw std::invalid_argument("family.source must be 'preset' or 'random'");
  }
  if (!family.preset.empty() && family.preset != "one_electron" && family.preset != "two_electron") {
    throw std::invalid_argument("family.preset must be 'one_electron' or 'two_electron'");
  }
  if (family.source == "preset" && grid.half_length != kPresetHalfLength) {
    throw std::invalid_argument("preset families are defined for grid.half_length = 15");
  }
  if (family.count < 1) throw std::invalid_argument("family.count must be at least 1");
  if (!std::isfinite(family.microwell_strength) || family.microwell_strength < 0.0) {
    throw std::invalid_argument("family.microwell_strength must be non-negative");
  }
  if (family.num_terms < 1) throw std::invalid_argument("family.num_terms must be at least 1");
  if (!(solver.tolerance > 0.0)) throw std::invalid_argument("solver.tolerance must be positive");
  if (solver.max_subspace < 2 || solver.restart_keep < 1 ||
      solver.restart_keep >= solver.max_subspace) {
    throw std::invalid_argument("solver needs 1 <= restart_keep < max_subspace");
  }
  propagation.validate();
  if (threads < 0) throw std::invalid_argument("threads must be non-negative");
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
}

RunConfig parse_config(const json& doc) {
  RunConfig config;
  reject_unknown(doc, "config",
                 {"schema", "grid", "family", "solver", "propagation", "metrics", "output_dir",
                  "threads"});
  read(doc, "schema", config.schema);
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    reject_unknown(g, "grid", {"half_length", "num_points"});
    read(g, "half_length", config.grid.half_length);
    read(g, "num_points", config.grid.num_points);
  }
  if (doc.contains("family")) {
    const auto& f = doc.at("family");
    reject_unknown(f, "family",
                   {"source", "preset", "seed", "count", "microwell_strength", "num_terms"});
    read(f, "source", config.family.source);
    read(f, "preset", config.family.preset);
    read(f, "seed", config.family.seed);
    read(f, "count", config.family.count);
    read(f, "microwell_strength", config.family.microwell_strength);
    read(f, "num_terms", config.family.num_terms);
  }
  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    reject_unknown(s, "solver",
                   {"interacting", "tolerance", "max_matvecs", "max_subspace", "restart_keep",
                    "max_basis"});
    read(s, "interacting", config.solver.interacting);
    read(s, "tolerance", config.solver.tolerance);
    read(s, "max_matvecs", config.solver.max_matvecs);
    read(s, "max_subspace", config.solver.max_subspace);
    read(s, "restart_keep", config.solver.restart_keep);
    read(s, "max_basis", config.solver.max_basis);
  }
  if (doc.contains("propagation")) {
    const auto& p = doc.at("propagation");
    reject_unknown(p, "propagation",
                   {"field_strength", "dt", "total_time", "record_stride", "field_sign",
                    "reference"});
    read(p, "field_strength", config.propagation.field_strength);
    read(p, "dt", config.propagation.dt);
    read(p, "total_time", config.propagation.total_time);
    read(p, "record_stride", config.propagation.record_stride);
    read(p, "field_sign", config.propagation.field_sign);
    read(p, "reference", config.reference);
  }
  if (doc.contains("metrics")) {
    const auto& m = doc.at("metrics");
    reject_unknown(m, "metrics", {"convention"});
    if (m.contains("convention")) {
      std::string text;
      read(m, "convention", text);
      config.convention = parse_normalization(text);
    }
  }
  if (doc.contains("output_dir")) {
    std::string dir;
    read(doc, "output_dir", dir);
    config.output_dir = dir;
  }
  read(doc, "threads", config.threads);
  config.validate();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

Grid resolve_grid(const RunConfig& config, int electrons) {
  const std::size_t points = config.grid.num_points != 0 ? config.grid.num_points
                                                          : (electrons == 1 ? 301 : 151);
  return Grid(config.grid.half_length, points);
}

Family resolve_family(const RunConfig& config, PresetFamily default_preset, const Grid& grid) {
  if (config.family.source == "random") {
    return make_random_family(config.family.seed, static_cast<std::size_t>(config.family.count),
                              config.family.microwell_strength, grid, config.family.num_terms);
  }
  PresetFamily which = default_preset;
  if (config.family.preset == "one_electron") which = PresetFamily::one_electron;
  if (config.family.preset == "two_electron") which = PresetFamily::two_electron;
  return make_preset_family(which);
}

Solver2eOptions solver_options(const RunConfig& config) {
  Solver2eOptions options;
  options.interaction_scale = 1.0;
  options.max_basis = config.solver.max_basis;
  options.lanczos.tolerance = config.solver.tolerance;
  options.lanczos.max_matvecs = config.solver.max_matvecs;
  options.lanczos.max_subspace = config.solver.max_subspace;
  options.lanczos.restart_keep = config.solver.restart_keep;
  return options;
}

}  // namespace qmetric::cli
