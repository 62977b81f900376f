#include "qmetric_cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qmetric/io.hpp"
#include "qmetric_cli/svg_plot.hpp"

namespace qmetric::cli {

namespace {

namespace fs = std::filesystem;

std::string padded(std::size_t index, std::size_t count) {
  const std::size_t width = std::to_string(count).size() < 2 ? 2 : std::to_string(count).size();
  std::string s = std::to_string(index);
  return std::string(width - std::min(width, s.size()), '0') + s;
}

std::ofstream open(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// Shared error boundary: bad input -> 2, numerical/runtime failure -> 1.
template <typename Body>
int guarded(std::string_view command, std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    log << "qmetric " << command << ": invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    log << "qmetric " << command << ": failed: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

std::vector<PlotPoint> to_points(const std::vector<DistanceRecord>& records) {
  std::vector<PlotPoint> points;
  points.reserve(records.size());
  for (const auto& r : records) {
    PlotPoint::Kind kind = PlotPoint::Kind::circle;
    if (r.time) kind = *r.time == 0.0 ? PlotPoint::Kind::cross : PlotPoint::Kind::dot;
    points.push_back({r.d_psi, r.d_n, kind});
  }
  return points;
}

// Line through the ground-state points (untimed or t = 0) when there are any.
std::optional<double> line_for(const std::vector<DistanceRecord>& records) {
  std::vector<DistanceRecord> ground;
  for (const auto& r : records) {
    if (!r.time || *r.time == 0.0) ground.push_back(r);
  }
  const auto& use = ground.size() >= 2 ? ground : records;
  try {
    if (use.size() >= 2) return fit_slope_through_origin(use).slope;
  } catch (const MetricError&) {
  }
  return std::nullopt;
}

void write_svg(const fs::path& path, const std::vector<DistanceRecord>& records,
               const std::string& title, std::optional<double> slope) {
  PlotOptions options;
  options.title = title;
  options.slope = slope;
  const auto points = to_points(records);
  io::write_text_file(path, render_scatter_svg(points, options));
}

Normalization figure_default(Figure figure) {
  return figure == Figure::fig2 ? Normalization::natural : Normalization::per_electron;
}

}  // namespace

std::optional<Figure> parse_figure(std::string_view name) {
  if (name == "fig2") return Figure::fig2;
  if (name == "fig3") return Figure::fig3;
  if (name == "fig4") return Figure::fig4;
  return std::nullopt;
}

int cmd_potentials(const RunConfig& config, std::ostream& log) {
  return guarded("potentials", log, [&] {
    config.validate();
    const Grid grid = resolve_grid(config, 1);
    const Family family = resolve_family(config, PresetFamily::one_electron, grid);

    std::vector<Potential> shifted;
    std::vector<double> energies;
    for (const auto& member : family) {
      const Potential v = fourier_potential(member.spec, grid);
      const double e0 = ground_state(v).energy;
      energies.push_back(e0);
      shifted.push_back(shift_to_ground_energy(v, e0));
    }

    const fs::path dir = config.output_dir / "potentials";
    fs::create_directories(dir);
    auto index = open(dir / "index.csv");
    index << "system,ground_energy,interior_minima,file\n";
    for (std::size_t k = 0; k < family.size(); ++k) {
      const std::string file = "system_" + padded(k + 1, family.size()) + ".dat";
      auto out = open(dir / file);
      out << "# system " << family[k].id << ", shifted so the ground-state energy is 0\n";
      io::write_potential(out, shifted[k]);
      index << family[k].id << ',' << io::format_number(energies[k]) << ','
            << count_interior_minima(shifted[k]) << ',' << file << '\n';
    }
    log << "wrote " << family.size() << " potentials to " << dir.string() << '\n';
    return kOk;
  });
}

int cmd_solve1e(const RunConfig& config, std::ostream& log) {
  return guarded("solve1e", log, [&] {
    config.validate();
    const Grid grid = resolve_grid(config, 1);
    const Family family = resolve_family(config, PresetFamily::one_electron, grid);
    FamilyRunOptions options;
    options.grid = grid;
    options.model = ParticleModel::one_electron;
    options.threads = config.threads;
    const FamilyRun run = run_ground_state_family(family, options);

    const fs::path dir = config.output_dir / "solve1e";
    fs::create_directories(dir);
    auto index = open(dir / "index.csv");
    index << "system,energy,wavefunction,density\n";
    for (std::size_t k = 0; k < run.members.size(); ++k) {
      const auto& m = run.members[k];
      const std::string tag = padded(k + 1, run.members.size());
      auto wf = open(dir / ("wavefunction_" + tag + ".dat"));
      io::write_wavefunction(wf, std::get<Wavefunction1e>(m.state));
      auto dn = open(dir / ("density_" + tag + ".dat"));
      io::write_density(dn, m.density);
      index << m.id << ',' << io::format_number(m.energy) << ",wavefunction_" << tag
            << ".dat,density_" << tag << ".dat\n";
    }
    log << "solved " << run.members.size() << " one-electron systems into " << dir.string() << '\n';
    return kOk;
  });
}

int cmd_solve2e(const RunConfig& config, std::ostream& log) {
  return guarded("solve2e", log, [&] {
    config.validate();
    const Grid grid = resolve_grid(config, 2);
    const Family family = resolve_family(config, PresetFamily::two_electron, grid);
    const Solver2eOptions solver = solver_options(config);

    const fs::path dir = config.output_dir / "solve2e";
    std::vector<GroundState2e> states;
    for (const auto& member : family) {
      const Potential v = fourier_potential(member.spec, grid);
      try {
        states.push_back(config.solver.interacting ? ground_state_interacting(v, solver)
                                                   : ground_state_noninteracting(v));
      } catch (const std::exception& e) {
        throw ExperimentError(member.id, e.what());
      }
    }
    fs::create_directories(dir);
    auto index = open(dir / "index.csv");
    index << "system,interacting,energy,matvecs,residual,wavefunction,density\n";
    for (std::size_t k = 0; k < states.size(); ++k) {
      const std::string tag = padded(k + 1, states.size());
      auto wf = open(dir / ("wavefunction2e_" + tag + ".dat"));
      io::write_wavefunction2e(wf, states[k].state);
      auto dn = open(dir / ("density_" + tag + ".dat"));
      io::write_density(dn, density_from_2e(states[k].state));
      index << family[k].id << ',' << (config.solver.interacting ? "true" : "false") << ','
            << io::format_number(states[k].energy) << ',' << states[k].matvecs << ','
            << io::format_number(states[k].residual) << ",wavefunction2e_" << tag
            << ".dat,density_" << tag << ".dat\n";
    }
    log << "solved " << states.size() << " two-electron systems into " << dir.string() << '\n';
    return kOk;
  });
}

int cmd_propagate(const RunConfig& config, std::ostream& log) {
  return guarded("propagate", log, [&] {
    config.validate();
    const Grid grid = resolve_grid(config, 1);
    const Family family = resolve_family(config, PresetFamily::one_electron, grid);
    std::vector<Trajectory> trajectories;
    for (const auto& member : family) {
      const Potential v = fourier_potential(member.spec, grid);
      try {
        trajectories.push_back(propagate(ground_state(v).state, v, config.propagation));
      } catch (const std::exception& e) {
        throw ExperimentError(member.id, e.what());
      }
    }
    const fs::path dir = config.output_dir / "propagate";
    for (std::size_t k = 0; k < family.size(); ++k) {
      io::write_trajectory(dir / ("system_" + padded(k + 1, family.size())), trajectories[k]);
    }
    log << "propagated " << family.size() << " systems for "
        << io::format_number(config.propagation.total_time) << " a.u. into " << dir.string()
        << '\n';
    return kOk;
  });
}

int cmd_distances(const RunConfig& config, int electrons, std::ostream& log) {
  return guarded("distances", log, [&] {
    config.validate();
    if (electrons != 1 && electrons != 2) throw std::invalid_argument("electrons must be 1 or 2");
    const Grid grid = resolve_grid(config, electrons);
    const Family family = resolve_family(
        config, electrons == 1 ? PresetFamily::one_electron : PresetFamily::two_electron, grid);
    FamilyRunOptions options;
    options.grid = grid;
    options.model = electrons == 1 ? ParticleModel::one_electron
                                   : (config.solver.interacting ? ParticleModel::two_interacting
                                                                : ParticleModel::two_noninteracting);
    options.solver = solver_options(config);
    options.threads = config.threads;
    const FamilyRun run = run_ground_state_family(family, options);
    const Normalization mode = config.convention.value_or(Normalization::natural);
    const fs::path dir = config.output_dir / "distances";
    io::write_family_outputs(dir, "distances", run, mode);
    if (run.records.size() >= 2) {
      log << "slope (" << to_string(mode) << ") = " << io::format_number(run.fit(mode).slope) << '\n';
    }
    return kOk;
  });
}

int cmd_experiment(const RunConfig& config, Figure figure, std::ostream& log) {
  const char* name = figure == Figure::fig2 ? "fig2" : (figure == Figure::fig3 ? "fig3" : "fig4");
  return guarded(std::string("experiment ") + name, log, [&] {
    config.validate();
    const Normalization mode = config.convention.value_or(figure_default(figure));
    const fs::path dir = config.output_dir / name;

    if (figure == Figure::fig2) {
      const Grid grid = resolve_grid(config, 1);
      const Family family = resolve_family(config, PresetFamily::one_electron, grid);
      DynamicsRunOptions options;
      options.grid = grid;
      options.reference = config.reference;
      options.propagation = config.propagation;
      options.threads = config.threads;
      const DynamicsRun run = run_dynamics_family(family, options);
      const LowerTriangleSummary stats = lower_triangle_statistics(run);
      io::write_dynamics_outputs(dir, name, run, stats, mode);

      std::vector<DistanceRecord> plotted;
      for (const auto& r : run.trail_records) plotted.push_back(convert(r, mode));
      const MetricConvention shown{mode, 1};
      const double line = run.ground_state_fit.slope * density_distance_scale(shown) /
                          wavefunction_distance_scale(shown);
      write_svg(dir / "fig2.svg", plotted, "fig2: trails vs reference " + run.reference_id, line);
      log << "ground-state line (natural): D_n = " << io::format_number(run.ground_state_fit.slope)
          << " D_psi; below-line fraction " << io::format_number(stats.below_fraction)
          << "; time-averaged ratio " << io::format_number(stats.time_averaged_ratio)
          << "; upper-triangle records " << stats.upper_triangle_count << '\n';
      return kOk;
    }

    const Grid grid = resolve_grid(config, 2);
    const Family family = resolve_family(config, PresetFamily::two_electron, grid);
    FamilyRunOptions options;
    options.grid = grid;
    options.model = figure == Figure::fig3 ? ParticleModel::two_interacting
                                           : ParticleModel::two_noninteracting;
    options.solver = solver_options(config);
    options.threads = config.threads;
    const FamilyRun run = run_ground_state_family(family, options);
    io::write_family_outputs(dir, name, run, mode);
    if (run.records.size() >= 2) {
      const auto records = run.records_in(mode);
      const double slope = run.fit(mode).slope;
      write_svg(dir / (std::string(name) + ".svg"), records,
                std::string(name) + (figure == Figure::fig3 ? ": interacting" : ": non-interacting"),
                slope);
      log << name << " slope (" << to_string(mode) << ") = " << io::format_number(slope) << '\n';
    }
    return kOk;
  });
}

int cmd_plot(const PlotRequest& request, std::ostream& log) {
  return guarded("plot", log, [&]() -> int {
    std::ifstream in(request.input);
    if (!in) throw std::invalid_argument("cannot read " + request.input.string());
    std::vector<DistanceRecord> records;
    try {
      records = io::read_records_csv(in);
    } catch (const std::exception& e) {
      throw std::invalid_argument(request.input.string() + ": " + e.what());
    }
    if (!records.empty()) {
      const Normalization wanted = request.convention.value_or(records.front().convention.mode);
      std::erase_if(records, [&](const DistanceRecord& r) { return r.convention.mode != wanted; });
    }
    if (records.empty()) log << "qmetric plot: warning: no records to plot; writing axes only\n";
    if (!request.output.parent_path().empty()) fs::create_directories(request.output.parent_path());
    write_svg(request.output, records, request.title, line_for(records));
    log << "wrote " << request.output.string() << " (" << records.size() << " points)\n";
    return kOk;
  });
}

}  // namespace qmetric::cli
