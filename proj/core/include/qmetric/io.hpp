#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qmetric/dynamics.hpp"
#include "qmetric/experiments.hpp"
#include "qmetric/metrics.hpp"
#include "qmetric/potentials.hpp"
#include "qmetric/solver1e.hpp"
#include "qmetric/solver2e.hpp"

namespace qmetric::io {

/// Shortest text that round-trips the double.
std::string format_number(double value);

/// Two columns: x V. Lines starting with '#' are comments.
void write_potential(std::ostream& out, const Potential& potential);
/// Three columns: x Re(psi) Im(psi).
void write_wavefunction(std::ostream& out, const Wavefunction1e& psi);
/// Two columns: x n.
void write_density(std::ostream& out, const Density& density);

/// Text dump of the stored i < j triangle with a '#' header carrying the
/// grid and normalization; one line "i j Re Im" per interior pair.
void write_wavefunction2e(std::ostream& out, const Wavefunction2e& psi);
Wavefunction2e read_wavefunction2e(std::istream& in);

/// Header: system_a,system_b,time,D_psi,D_n,convention,N
inline constexpr std::string_view kRecordsHeader = "system_a,system_b,time,D_psi,D_n,convention,N";
void write_records_csv(std::ostream& out, const std::vector<DistanceRecord>& records);
/// Throws std::runtime_error on a malformed file.
std::vector<DistanceRecord> read_records_csv(std::istream& in);

/// Writes density_XXXXX.dat per snapshot and index.csv (snapshot,time,norm,energy,file).
void write_trajectory(const std::filesystem::path& dir, const Trajectory& trajectory);

/// records.csv (every normalization), summary.json, <figure>_data.csv.
void write_family_outputs(const std::filesystem::path& dir, std::string_view figure,
                          const FamilyRun& run, Normalization figure_mode);

/// records.csv (static + trail, every normalization), summary.json,
/// <figure>_data.csv.
void write_dynamics_outputs(const std::filesystem::path& dir, std::string_view figure,
                            const DynamicsRun& run, const LowerTriangleSummary& summary,
                            Normalization figure_mode);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qmetric::io
