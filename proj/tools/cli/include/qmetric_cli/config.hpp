#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qmetric/dynamics.hpp"
#include "qmetric/experiments.hpp"
#include "qmetric/metrics.hpp"

namespace qmetric::cli {

inline constexpr int kConfigSchema = 1;

struct GridSettings {
  double half_length = kPresetHalfLength;
  std::size_t num_points = 0;  // 0: 301 for one-electron work, 151 for two
};

struct FamilySettings {
  std::string source = "preset";  // preset | random
  std::string preset;             // one_electron | two_electron; empty: by command
  std::uint64_t seed = 1;
  long long count = 10;
  double microwell_strength = 0.1;
  std::size_t num_terms = 3;
};

struct SolverSettings {
  bool interacting = true;
  double tolerance = 1e-9;
  std::size_t max_matvecs = 20000;
  std::size_t max_subspace = 96;
  std::size_t restart_keep = 12;
  std::size_t max_basis = 2'000'000;
};

/// Everything a subcommand needs. Validated before any computation.
struct RunConfig {
  int schema = kConfigSchema;
  GridSettings grid;
  FamilySettings family;
  SolverSettings solver;
  PropagationConfig propagation;
  std::size_t reference = 0;
  std::optional<Normalization> convention;  // empty: per-figure default
  std::filesystem::path output_dir = "qmetric-out";
  int threads = 0;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
};

/// Parses the JSON config; unknown keys and a wrong schema are rejected.
///
///   {
///     "schema": 1,
///     "grid":   {"half_length": 15, "num_points": 151},
///     "family": {"source": "preset", "preset": "two_electron", "seed": 1,
///                "count": 10, "microwell_strength": 0.1, "num_terms": 3},
///     "solver": {"interacting": true, "tolerance": 1e-9, "max_matvecs": 20000,
///                "max_subspace": 96, "restart_keep": 12, "max_basis": 2000000},
///     "propagation": {"field_strength": 0.01, "dt": 0.01, "total_time": 10,
///                     "record_stride": 10, "field_sign": 1, "reference": 0},
///     "metrics": {"convention": "per_electron"},
///     "output_dir": "out", "threads": 0
///   }
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Grid for a command working with `electrons` particles.
Grid resolve_grid(const RunConfig& config, int electrons);

/// Family for a command; `default_preset` applies when none is configured.
Family resolve_family(const RunConfig& config, PresetFamily default_preset, const Grid& grid);

Solver2eOptions solver_options(const RunConfig& config);

}  // namespace qmetric::cli
