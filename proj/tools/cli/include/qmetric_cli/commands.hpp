#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qmetric/metrics.hpp"
#include "qmetric_cli/config.hpp"

namespace qmetric::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kInvalidInput = 2 };

enum class Figure { fig2, fig3, fig4 };
std::optional<Figure> parse_figure(std::string_view name);

// Each command validates the config first and writes nothing when that fails.
// Outputs go to <output_dir>/<command>/.
int cmd_potentials(const RunConfig& config, std::ostream& log);
int cmd_solve1e(const RunConfig& config, std::ostream& log);
int cmd_solve2e(const RunConfig& config, std::ostream& log);
int cmd_propagate(const RunConfig& config, std::ostream& log);
int cmd_distances(const RunConfig& config, int electrons, std::ostream& log);
int cmd_experiment(const RunConfig& config, Figure figure, std::ostream& log);

struct PlotRequest {
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<Normalization> convention;  // empty: convention of the first row
  std::string title;
};

int cmd_plot(const PlotRequest& request, std::ostream& log);

}  // namespace qmetric::cli
