#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qmetric_cli/commands.hpp"
#include "qmetric_cli/config.hpp"

using namespace qmetric;
using namespace qmetric::cli;

namespace {

struct Overrides {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string preset;
  std::optional<bool> interacting;
  std::string convention;
  std::optional<int> threads;
  std::optional<std::size_t> points;
  std::optional<double> field;
};

RunConfig build_config(const Overrides& o) {
  RunConfig config = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (const char* env = std::getenv("QMETRIC_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    config.output_dir = env;
  }
  if (!o.out.empty()) config.output_dir = o.out;
  if (o.seed) {
    config.family.source = "random";
    config.family.seed = *o.seed;
  }
  if (!o.preset.empty()) {
    config.family.source = "preset";
    config.family.preset = o.preset;
  }
  if (o.interacting) config.solver.interacting = *o.interacting;
  if (!o.convention.empty()) config.convention = parse_normalization(o.convention);
  if (o.threads) config.threads = *o.threads;
  if (o.points) config.grid.num_points = *o.points;
  if (o.field) config.propagation.field_strength = *o.field;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmetric: random 1D potentials, exact one- and two-electron solves, and "
               "wavefunction/density distances"};
  app.require_subcommand(1);

  Overrides o;
  std::string interaction_flag;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", o.out, "Output directory (overrides config and QMETRIC_OUTPUT_DIR)");
    cmd->add_option("--seed", o.seed, "Use a seeded random family with this seed");
    cmd->add_option("--preset", o.preset, "Use a bundled family")
        ->check(CLI::IsMember({"one_electron", "two_electron"}));
    cmd->add_flag("--interacting{true},--non-interacting{false}", o.interacting,
                  "Two-electron interaction on/off");
    cmd->add_option("--convention", o.convention, "Distance normalization")
        ->check(CLI::IsMember({"natural", "unit", "unit_normalized", "per_electron", "per-electron"}));
    cmd->add_option("--threads", o.threads, "Worker thread cap (0: all)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--points", o.points, "Grid points (overrides config)");
  };

  auto* potentials = app.add_subcommand("potentials", "Write shifted potentials of a family");
  auto* solve1e = app.add_subcommand("solve1e", "One-electron ground states");
  auto* solve2e = app.add_subcommand("solve2e", "Two-electron ground states");
  auto* propagate = app.add_subcommand("propagate", "Time-propagate one-electron ground states in a field");
  auto* distances = app.add_subcommand("distances", "Pairwise ground-state distances of a family");
  auto* experiment = app.add_subcommand("experiment", "Run a figure pipeline end to end");
  auto* plot = app.add_subcommand("plot", "Render a records CSV as an SVG scatter plot");

  for (auto* cmd : {potentials, solve1e, solve2e, propagate, distances, experiment}) add_common(cmd);
  for (auto* cmd : {propagate, experiment}) {
    cmd->add_option("--field", o.field, "Field strength (a.u.)");
  }

  int electrons = 2;
  distances->add_option("--electrons", electrons, "1 or 2")->check(CLI::IsMember({1, 2}));

  std::string figure_name;
  experiment->add_option("figure", figure_name, "fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));

  PlotRequest plot_request;
  std::string plot_convention;
  plot->add_option("input", plot_request.input, "Records CSV")->required();
  plot->add_option("-o,--output", plot_request.output, "SVG file to write")->required();
  plot->add_option("--convention", plot_convention, "Only plot rows in this normalization");
  plot->add_option("--title", plot_request.title, "Plot title");

  CLI11_PARSE(app, argc, argv);

  if (*plot) {
    try {
      if (!plot_convention.empty()) plot_request.convention = parse_normalization(plot_convention);
    } catch (const std::exception& e) {
      std::cerr << "qmetric plot: " << e.what() << '\n';
      return kInvalidInput;
    }
    return cmd_plot(plot_request, std::cerr);
  }

  RunConfig config;
  try {
    config = build_config(o);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "qmetric: invalid configuration: " << e.what() << '\n';
    return kInvalidInput;
  }

  if (*potentials) return cmd_potentials(config, std::cerr);
  if (*solve1e) return cmd_solve1e(config, std::cerr);
  if (*solve2e) return cmd_solve2e(config, std::cerr);
  if (*propagate) return cmd_propagate(config, std::cerr);
  if (*distances) return cmd_distances(config, electrons, std::cerr);
  if (*experiment) return cmd_experiment(config, *parse_figure(figure_name), std::cerr);
  return kInvalidInput;
}
