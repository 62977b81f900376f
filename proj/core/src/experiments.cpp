#include "qmetric/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace qmetric {

namespace {

Family label(const std::vector<FourierPotentialSpec>& specs) {
  Family family;
  family.reserve(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) {
    family.push_back(FamilyMember{std::to_string(k + 1), specs[k]});
  }
  return family;
}

SolvedMember solve_member(const FamilyMember& member, const FamilyRunOptions& options) {
  const Potential potential = fourier_potential(member.spec, options.grid);
  switch (options.model) {
    case ParticleModel::one_electron: {
      EigenPair1e gs = ground_state(potential);
      Density n = density_from_1e(gs.state);
      return SolvedMember{member.id, gs.energy, std::move(gs.state), std::move(n)};
    }
    case ParticleModel::two_interacting:
    case ParticleModel::two_noninteracting: {
      GroundState2e gs = options.model == ParticleModel::two_interacting
                             ? ground_state_interacting(potential, options.solver)
                             : ground_state_noninteracting(potential);
      Density n = density_from_2e(gs.state);
      return SolvedMember{member.id, gs.energy, std::move(gs.state), std::move(n)};
    }
  }
  throw std::logic_error("unhandled particle model");
}

double state_distance(const SolvedMember& a, const SolvedMember& b, const MetricConvention& c) {
  return std::visit(
      [&](const auto& sa) -> double {
        using T = std::decay_t<decltype(sa)>;
        return wavefunction_distance(sa, std::get<T>(b.state), c);
      },
      a.state);
}

}  // namespace

Family make_preset_family(PresetFamily which) { return label(load_preset_family(which)); }

Family make_random_family(std::uint64_t seed, std::size_t count, double microwell_strength,
                          const Grid& grid, std::size_t num_terms) {
  return label(sample_fourier_family(seed, count, microwell_strength, grid, num_terms));
}

int electron_number(ParticleModel model) noexcept {
  return model == ParticleModel::one_electron ? 1 : 2;
}

std::vector<DistanceRecord> FamilyRun::records_in(Normalization mode) const {
  std::vector<DistanceRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(convert(r, mode));
  return out;
}

SlopeFit FamilyRun::fit(Normalization mode) const {
  const auto converted = records_in(mode);
  return fit_slope_through_origin(converted);
}

FamilyRun run_ground_state_family(const Family& family, const FamilyRunOptions& options) {
  if (family.empty()) throw std::invalid_argument("family is empty");
  FamilyRun run;
  run.model = options.model;
  std::vector<std::optional<SolvedMember>> solved(family.size());
  detail::parallel_for(family.size(), options.threads, [&](std::size_t k) {
    try {
      solved[k] = solve_member(family[k], options);
    } catch (const std::exception& e) {
      throw ExperimentError(family[k].id, e.what());
    }
  });
  run.members.reserve(solved.size());
  for (auto& member : solved) run.members.push_back(std::move(*member));

  const MetricConvention natural{Normalization::natural, electron_number(options.model)};
  const std::size_t n = family.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  run.records.resize(pairs.size());
  detail::parallel_for(pairs.size(), options.threads, [&](std::size_t p) {
    const auto& ma = run.members[pairs[p].first];
    const auto& mb = run.members[pairs[p].second];
    run.records[p] = DistanceRecord{ma.id, mb.id, std::nullopt, state_distance(ma, mb, natural),
                                    density_distance(ma.density, mb.density, natural), natural};
  });
  return run;
}

DynamicsRun run_dynamics_family(const Family& family, const DynamicsRunOptions& options) {
  if (family.size() < 2) throw std::invalid_argument("dynamics needs at least two systems");
  if (options.reference >= family.size()) {
    throw std::invalid_argument("reference index outside the family");
  }
  options.propagation.validate();

  FamilyRunOptions statics;
  statics.grid = options.grid;
  statics.model = ParticleModel::one_electron;
  statics.threads = options.threads;
  const FamilyRun ground = run_ground_state_family(family, statics);

  DynamicsRun run;
  run.reference_id = family[options.reference].id;
  run.static_records = ground.records;
  run.ground_state_fit = fit_slope_through_origin(run.static_records);

  std::vector<Trajectory> trajectories(family.size());
  detail::parallel_for(family.size(), options.threads, [&](std::size_t k) {
    try {
      const Potential potential = fourier_potential(family[k].spec, options.grid);
      const auto& psi0 = std::get<Wavefunction1e>(ground.members[k].state);
      trajectories[k] = propagate(psi0, potential, options.propagation);
    } catch (const std::exception& e) {
      throw ExperimentError(family[k].id, e.what());
    }
  });
  run.times = trajectories[options.reference].times;
  for (const auto& t : trajectories) {
    for (double norm : t.norms) run.max_norm_drift = std::max(run.max_norm_drift, std::abs(norm - 1.0));
  }

  const MetricConvention natural{Normalization::natural, 1};
  const Trajectory& ref = trajectories[options.reference];
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (k != options.reference) others.push_back(k);
  }
  const std::size_t snapshots = run.times.size();
  run.trail_records.resize(others.size() * snapshots);
  detail::parallel_for(others.size(), options.threads, [&](std::size_t o) {
    const Trajectory& t = trajectories[others[o]];
    for (std::size_t s = 0; s < snapshots; ++s) {
      run.trail_records[o * snapshots + s] = DistanceRecord{
          run.reference_id,
          family[others[o]].id,
          run.times[s],
          wavefunction_distance(ref.states[s], t.states[s], natural),
          density_distance(ref.densities[s], t.densities[s], natural),
          natural};
    }
  });
  return run;
}

LowerTriangleSummary lower_triangle_statistics(std::span<const DistanceRecord> trail_records,
                                               double slope, double band) {
  LowerTriangleSummary summary;
  summary.ground_state_slope = slope;
  summary.band = band;
  double below = 0.0;
  double max_above = -std::numeric_limits<double>::infinity();
  std::map<double, std::pair<double, double>> by_time;  // time -> (sum D_n, sum D_psi)
  for (const auto& r : trail_records) {
    const double residual = r.d_n - slope * r.d_psi;
    const double tie = 1e-12 * std::max(1.0, std::abs(slope * r.d_psi));
    const bool initial = !r.time || *r.time <= 0.0;
    if (initial) {
      if (std::abs(residual) > band) ++summary.initial_outside_band;
      continue;
    }
    ++summary.samples;
    if (residual < -tie) {
      below += 1.0;
    } else if (residual <= tie) {
      below += 0.5;
    }
    if (residual > band) ++summary.upper_triangle_count;
    max_above = std::max(max_above, residual);
    auto& sums = by_time[*r.time];
    sums.first += r.d_n;
    sums.second += r.d_psi;
  }
  if (summary.samples > 0) {
    summary.below_fraction = below / static_cast<double>(summary.samples);
    summary.max_excursion_above = max_above;
  }
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (const auto& [time, sums] : by_time) {
    if (sums.second > 0.0) {
      ratio_sum += sums.first / sums.second;
      ++ratio_count;
    }
  }
  if (ratio_count > 0) summary.time_averaged_ratio = ratio_sum / static_cast<double>(ratio_count);
  return summary;
}

LowerTriangleSummary lower_triangle_statistics(const DynamicsRun& run, double band_multiplier) {
  const double band = band_multiplier * run.ground_state_fit.rms_residual;
  LowerTriangleSummary summary =
      lower_triangle_statistics(run.trail_records, run.ground_state_fit.slope, band);
  summary.static_rms_residual = run.ground_state_fit.rms_residual;
  return summary;
}

}  // namespace qmetric
