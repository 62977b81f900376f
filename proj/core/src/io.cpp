#include "qmetric/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>


namespace qmetric::io {

namespace {

constexpr std::array<Normalization, 3> kAllModes = {Normalization::natural, Normalization::unit,
                                                    Normalization::per_electron};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("malformed " + what + ": '" + text + "'");
  }
  return value;
}

void write_record_row(std::ostream& out, const DistanceRecord& r) {
  out << r.system_a << ',' << r.system_b << ',' << (r.time ? format_number(*r.time) : "") << ','
      << format_number(r.d_psi) << ',' << format_number(r.d_n) << ','
      << to_string(r.convention.mode) << ',' << r.convention.electron_number << '\n';
}

nlohmann::json fit_json(const SlopeFit& fit) {
  return {{"slope", fit.slope},
          {"rms_residual", fit.rms_residual},
          {"max_relative_deviation", fit.max_relative_deviation},
          {"count", fit.count}};
}

std::string_view model_name(ParticleModel model) {
  switch (model) {
    case ParticleModel::one_electron: return "one_electron";
    case ParticleModel::two_interacting: return "two_interacting";
    case ParticleModel::two_noninteracting: return "two_noninteracting";
  }
  return "";
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

void write_potential(std::ostream& out, const Potential& potential) {
  const Grid& g = potential.grid();
  out << "# x V\n";
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    out << format_number(g.x(i)) << ' ' << format_number(potential[i]) << '\n';
  }
}

void write_wavefunction(std::ostream& out, const Wavefunction1e& psi) {
  const Grid& g = psi.grid;
  out << "# x Re(psi) Im(psi)\n";
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto a = psi.amplitudes[static_cast<Eigen::Index>(i)];
    out << format_number(g.x(i)) << ' ' << format_number(a.real()) << ' '
        << format_number(a.imag()) << '\n';
  }
}

void write_density(std::ostream& out, const Density& density) {
  const Grid& g = density.grid;
  out << "# x n  (N = " << density.electron_number << ")\n";
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    out << format_number(g.x(i)) << ' '
        << format_number(density.values[static_cast<Eigen::Index>(i)]) << '\n';
  }
}

void write_wavefunction2e(std::ostream& out, const Wavefunction2e& psi) {
  const Grid& g = psi.grid;
  out << "# qmetric wavefunction2e v1\n"
      << "# half_length " << format_number(g.half_length()) << '\n'
      << "# num_points " << g.num_points() << '\n'
      << "# normalization unit dx^2*sum_ij|psi|^2=1 antisymmetric psi(j,i)=-psi(i,j)\n"
      << "# columns i j Re Im (full-grid indices, i<j, interior only)\n";
  const PairBasis basis(g.interior_size());
  for (std::size_t i = 0; i < basis.interior_points(); ++i) {
    for (std::size_t j = i + 1; j < basis.interior_points(); ++j) {
      const auto c = psi.pair_amplitudes[static_cast<Eigen::Index>(basis.index(i, j))];
      out << i + 1 << ' ' << j + 1 << ' ' << format_number(c.real()) << ' '
          << format_number(c.imag()) << '\n';
    }
  }
}

Wavefunction2e read_wavefunction2e(std::istream& in) {
  std::string line;
  double half_length = 0.0;
  std::size_t num_points = 0;
  std::vector<std::tuple<std::size_t, std::size_t, double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string hash, key;
      fields >> hash >> key;
      if (key == "half_length") fields >> half_length;
      if (key == "num_points") fields >> num_points;
      continue;
    }
    std::size_t i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(fields >> i >> j >> re >> im)) throw std::runtime_error("malformed wavefunction row");
    rows.emplace_back(i, j, re, im);
  }
  const Grid grid(half_length, num_points);
  const PairBasis basis(grid.interior_size());
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [i, j, re, im] : rows) {
    if (i == 0 || j <= i || j + 1 >= num_points) throw std::runtime_error("pair index out of range");
    c[static_cast<Eigen::Index>(basis.index(i - 1, j - 1))] = {re, im};
  }
  return Wavefunction2e{grid, std::move(c)};
}

void write_records_csv(std::ostream& out, const std::vector<DistanceRecord>& records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) write_record_row(out, r);
}

std::vector<DistanceRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto header = split_csv(line);
  auto column = [&](std::string_view name) -> std::ptrdiff_t {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) return static_cast<std::ptrdiff_t>(c);
    }
    return -1;
  };
  const auto c_a = column("system_a"), c_b = column("system_b"), c_t = column("time");
  const auto c_psi = column("D_psi"), c_n = column("D_n");
  const auto c_conv = column("convention"), c_N = column("N");
  if (c_psi < 0 || c_n < 0) throw std::runtime_error("CSV header lacks D_psi/D_n columns");

  std::vector<DistanceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " fields");
    }
    DistanceRecord r;
    if (c_a >= 0) r.system_a = f[static_cast<std::size_t>(c_a)];
    if (c_b >= 0) r.system_b = f[static_cast<std::size_t>(c_b)];
    if (c_t >= 0 && !f[static_cast<std::size_t>(c_t)].empty()) {
      r.time = parse_number(f[static_cast<std::size_t>(c_t)], "time");
    }
    r.d_psi = parse_number(f[static_cast<std::size_t>(c_psi)], "D_psi");
    r.d_n = parse_number(f[static_cast<std::size_t>(c_n)], "D_n");
    if (c_conv >= 0) r.convention.mode = parse_normalization(f[static_cast<std::size_t>(c_conv)]);
    if (c_N >= 0) {
      r.convention.electron_number = static_cast<int>(parse_number(f[static_cast<std::size_t>(c_N)], "N"));
      r.convention.validate();
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  auto out = open_output(path);
  out << text;
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& trajectory) {
  std::filesystem::create_directories(dir);
  auto index = open_output(dir / "index.csv");
  index << "snapshot,time,norm,energy,file\n";
  for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
    std::ostringstream name;
    name << "density_" << std::string(5 - std::min<std::size_t>(5, std::to_string(s).size()), '0')
         << s << ".dat";
    auto out = open_output(dir / name.str());
    write_density(out, trajectory.densities[s]);
    index << s << ',' << format_number(trajectory.times[s]) << ','
          << format_number(trajectory.norms[s]) << ',' << format_number(trajectory.energies[s])
          << ',' << name.str() << '\n';
  }
}

void write_family_outputs(const std::filesystem::path& dir, std::string_view figure,
                          const FamilyRun& run, Normalization figure_mode) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "records.csv");
    out << kRecordsHeader << '\n';
    for (auto mode : kAllModes) {
      for (const auto& r : run.records_in(mode)) write_record_row(out, r);
    }
  }
  {
    auto out = open_output(dir / (std::string(figure) + "_data.csv"));
    out << "system_a,system_b,D_psi,D_n\n";
    for (const auto& r : run.records_in(figure_mode)) {
      out << r.system_a << ',' << r.system_b << ',' << format_number(r.d_psi) << ','
          << format_number(r.d_n) << '\n';
    }
  }
  nlohmann::ordered_json summary;
  summary["figure"] = figure;
  summary["model"] = model_name(run.model);
  summary["electrons"] = electron_number(run.model);
  summary["systems"] = run.members.size();
  summary["pairs"] = run.records.size();
  summary["figure_convention"] = to_string(figure_mode);
  summary["slope"] = run.records.size() >= 2 ? run.fit(figure_mode).slope : 0.0;
  if (run.records.size() >= 2) {
    for (auto mode : kAllModes) summary["fits"][std::string(to_string(mode))] = fit_json(run.fit(mode));
  }
  for (const auto& m : run.members) summary["energies"][m.id] = m.energy;
  auto out = open_output(dir / "summary.json");
  out << summary.dump(2) << '\n';
}

void write_dynamics_outputs(const std::filesystem::path& dir, std::string_view figure,
                            const DynamicsRun& run, const LowerTriangleSummary& stats,
                            Normalization figure_mode) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "records.csv");
    out << kRecordsHeader << '\n';
    for (auto mode : kAllModes) {
      for (const auto& r : run.static_records) write_record_row(out, convert(r, mode));
      for (const auto& r : run.trail_records) write_record_row(out, convert(r, mode));
    }
  }
  {
    auto out = open_output(dir / (std::string(figure) + "_data.csv"));
    out << "system_a,system_b,time,D_psi,D_n\n";
    for (const auto& rec : run.trail_records) {
      const auto r = convert(rec, figure_mode);
      out << r.system_a << ',' << r.system_b << ',' << format_number(*r.time) << ','
          << format_number(r.d_psi) << ',' << format_number(r.d_n) << '\n';
    }
  }
  nlohmann::ordered_json summary;
  summary["figure"] = figure;
  summary["reference"] = run.reference_id;
  summary["figure_convention"] = to_string(figure_mode);
  summary["ground_state_line"] = fit_json(run.ground_state_fit);
  summary["slope"] = run.ground_state_fit.slope;
  summary["snapshots"] = run.times.size();
  summary["max_norm_drift"] = run.max_norm_drift;
  summary["lower_triangle"] = {{"samples", stats.samples},
                               {"band", stats.band},
                               {"below_fraction", stats.below_fraction},
                               {"time_averaged_ratio", stats.time_averaged_ratio},
                               {"upper_triangle_count", stats.upper_triangle_count},
                               {"max_excursion_above", stats.max_excursion_above},
                               {"initial_outside_band", stats.initial_outside_band}};
  auto out = open_output(dir / "summary.json");
  out << summary.dump(2) << '\n';
}

}  // namespace qmetric::io
