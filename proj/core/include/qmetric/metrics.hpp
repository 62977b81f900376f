#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qmetric/solver1e.hpp"
#include "qmetric/solver2e.hpp"

namespace qmetric {

/// Scale the natural distances are reported in.
///   natural       D_psi in [0, sqrt(2N)], D_n in [0, 2N]
///   unit          natural divided by its maximum, both in [0, 1]
///   per_electron  D_psi / sqrt(N), D_n / N: the N = 1 scale, [0, sqrt 2] and [0, 2]
enum class Normalization { natural, unit, per_electron };

std::string_view to_string(Normalization mode) noexcept;
/// Accepts "natural", "unit", "unit_normalized", "per_electron", "per-electron".
Normalization parse_normalization(std::string_view text);

struct MetricConvention {
  Normalization mode = Normalization::natural;
  int electron_number = 1;

  void validate() const;
  bool operator==(const MetricConvention&) const = default;
};

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double max_wavefunction_distance(const MetricConvention& convention);
double max_density_distance(const MetricConvention& convention);

/// Factor taking a natural distance to `convention`.
double wavefunction_distance_scale(const MetricConvention& convention);
double density_distance_scale(const MetricConvention& convention);

/// sqrt(2N - 2N |<psi1|psi2>|) on unit-normalized inputs, then rescaled.
double wavefunction_distance(const Wavefunction1e& a, const Wavefunction1e& b,
                             const MetricConvention& convention);
double wavefunction_distance(const Wavefunction2e& a, const Wavefunction2e& b,
                             const MetricConvention& convention);

/// dx * sum |n1 - n2|, then rescaled.
double density_distance(const Density& a, const Density& b, const MetricConvention& convention);

struct DistanceRecord {
  std::string system_a;
  std::string system_b;
  std::optional<double> time;
  double d_psi = 0.0;
  double d_n = 0.0;
  MetricConvention convention{};
};

/// Re-expresses a record in another normalization of the same N.
DistanceRecord convert(const DistanceRecord& record, Normalization target);

struct SlopeFit {
  double slope = 0.0;
  double rms_residual = 0.0;
  /// max |D_n - s D_psi| / (s D_psi) over records with D_psi > 0
  double max_relative_deviation = 0.0;
  std::size_t count = 0;
};

/// Least-squares slope of D_n against D_psi through the origin,
/// sum(D_psi D_n) / sum(D_psi^2). Needs >= 2 records in one convention.
SlopeFit fit_slope_through_origin(std::span<const DistanceRecord> records);

}  // namespace qmetric
