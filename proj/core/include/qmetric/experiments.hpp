#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qmetric/dynamics.hpp"
#include "qmetric/errors.hpp"
#include "qmetric/metrics.hpp"
#include "qmetric/potentials.hpp"
#include "qmetric/solver1e.hpp"
#include "qmetric/solver2e.hpp"

namespace qmetric {

struct FamilyMember {
  std::string id;
  FourierPotentialSpec spec;
};

using Family = std::vector<FamilyMember>;

/// Preset rows labelled "1".."10".
Family make_preset_family(PresetFamily which);

/// Seeded random family labelled "1".."count".
Family make_random_family(std::uint64_t seed, std::size_t count, double microwell_strength,
                          const Grid& grid, std::size_t num_terms = 3);

enum class ParticleModel { one_electron, two_interacting, two_noninteracting };

int electron_number(ParticleModel model) noexcept;

struct SolvedMember {
  std::string id;
  double energy = 0.0;
  std::variant<Wavefunction1e, Wavefunction2e> state;
  Density density;
};

struct FamilyRunOptions {
  Grid grid{15.0, 151};
  ParticleModel model = ParticleModel::two_interacting;
  Solver2eOptions solver{};
  int threads = 0;  // 0: library default
};

/// Ground states of every member plus all unordered pairwise distances.
struct FamilyRun {
  ParticleModel model;
  std::vector<SolvedMember> members;
  /// Natural convention, ordered by (a, b) in family order.
  std::vector<DistanceRecord> records;

  std::vector<DistanceRecord> records_in(Normalization mode) const;
  SlopeFit fit(Normalization mode) const;
};

/// Thrown when solving one member fails; the message names the member.
class ExperimentError : public Error {
 public:
  ExperimentError(const std::string& system_id, const std::string& what)
      : Error("system " + system_id + ": " + what), system_id_(system_id) {}
  const std::string& system_id() const noexcept { return system_id_; }

 private:
  std::string system_id_;
};

FamilyRun run_ground_state_family(const Family& family, const FamilyRunOptions& options);

struct DynamicsRunOptions {
  Grid grid{15.0, 301};
  std::size_t reference = 0;  // index into the family
  PropagationConfig propagation{};
  int threads = 0;
};

struct DynamicsRun {
  std::string reference_id;
  /// All static ground-state pairs of the family (natural, N = 1).
  std::vector<DistanceRecord> static_records;
  SlopeFit ground_state_fit;
  /// Reference vs every other member at every snapshot, t = 0 included.
  std::vector<DistanceRecord> trail_records;
  std::vector<double> times;
  /// Largest |norm - 1| over all members and snapshots.
  double max_norm_drift = 0.0;
};

DynamicsRun run_dynamics_family(const Family& family, const DynamicsRunOptions& options);

struct LowerTriangleSummary {
  double ground_state_slope = 0.0;
  double static_rms_residual = 0.0;
  double band = 0.0;  // allowed |D_n - s D_psi| for "on the line"
  std::size_t samples = 0;            // t > 0 records
  double below_fraction = 0.0;        // ties count one half
  double time_averaged_ratio = 0.0;   // mean over t > 0 snapshots of sum D_n / sum D_psi
  std::size_t upper_triangle_count = 0;  // t > 0 records above the line by more than band
  double max_excursion_above = 0.0;
  std::size_t initial_outside_band = 0;  // t = 0 records outside the band
};

/// Statistics of the t > 0 records relative to the line D_n = slope * D_psi.
LowerTriangleSummary lower_triangle_statistics(std::span<const DistanceRecord> trail_records,
                                               double slope, double band);

/// Same, with the band set to band_multiplier x the static RMS residual.
LowerTriangleSummary lower_triangle_statistics(const DynamicsRun& run,
                                               double band_multiplier = 3.0);

}  // namespace qmetric
