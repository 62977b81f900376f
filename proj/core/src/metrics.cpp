#include "qmetric/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace qmetric {

namespace {

// sqrt(2N - 2N |<a|b>|) for unit-norm a, b, evaluated as sqrt(N) ||a - e^{i arg<a|b>} b||.
// Same value, but no cancellation in 1 - |<a|b>| when the states are close, so
// nearby distances keep full relative precision and do not see the global phase.
double natural_wavefunction_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                                     double weight, int n) {
  const std::complex<double> overlap = a.dot(b);
  const std::complex<double> phase =
      std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : std::complex<double>(1.0);
  return std::sqrt(n * weight) * (a - phase * b).norm();
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw MetricError("distance between states on different grids");
}

void require_electrons(const MetricConvention& c, int n) {
  c.validate();
  if (c.electron_number != n) {
    throw MetricError("convention is for N = " + std::to_string(c.electron_number) +
                      " but the states have N = " + std::to_string(n));
  }
}

}  // namespace

std::string_view to_string(Normalization mode) noexcept {
  switch (mode) {
    case Normalization::natural: return "natural";
    case Normalization::unit: return "unit";
    case Normalization::per_electron: return "per_electron";
  }
  return "natural";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "natural") return Normalization::natural;
  if (text == "unit" || text == "unit_normalized") return Normalization::unit;
  if (text == "per_electron" || text == "per-electron") return Normalization::per_electron;
  throw MetricError("unknown normalization '" + std::string(text) + "'");
}

void MetricConvention::validate() const {
  if (electron_number != 1 && electron_number != 2) {
    throw MetricError("electron number must be 1 or 2");
  }
}

double wavefunction_distance_scale(const MetricConvention& c) {
  c.validate();
  switch (c.mode) {
    case Normalization::natural: return 1.0;
    case Normalization::unit: return 1.0 / std::sqrt(2.0 * c.electron_number);
    case Normalization::per_electron: return 1.0 / std::sqrt(static_cast<double>(c.electron_number));
  }
  return 1.0;
}

double density_distance_scale(const MetricConvention& c) {
  c.validate();
  switch (c.mode) {
    case Normalization::natural: return 1.0;
    case Normalization::unit: return 1.0 / (2.0 * c.electron_number);
    case Normalization::per_electron: return 1.0 / c.electron_number;
  }
  return 1.0;
}

double max_wavefunction_distance(const MetricConvention& c) {
  return std::sqrt(2.0 * c.electron_number) * wavefunction_distance_scale(c);
}

double max_density_distance(const MetricConvention& c) {
  return 2.0 * c.electron_number * density_distance_scale(c);
}

double wavefunction_distance(const Wavefunction1e& a, const Wavefunction1e& b,
                             const MetricConvention& convention) {
  require_same_grid(a.grid, b.grid);
  require_electrons(convention, 1);
  return natural_wavefunction_distance(a.amplitudes, b.amplitudes, a.grid.spacing(), 1) *
         wavefunction_distance_scale(convention);
}

double wavefunction_distance(const Wavefunction2e& a, const Wavefunction2e& b,
                             const MetricConvention& convention) {
  require_same_grid(a.grid, b.grid);
  require_electrons(convention, 2);
  const double dx = a.grid.spacing();
  // Both triangles of the antisymmetric field contribute equally.
  return natural_wavefunction_distance(a.pair_amplitudes, b.pair_amplitudes, 2.0 * dx * dx, 2) *
         wavefunction_distance_scale(convention);
}

double density_distance(const Density& a, const Density& b, const MetricConvention& convention) {
  require_same_grid(a.grid, b.grid);
  if (a.electron_number != b.electron_number) {
    throw MetricError("densities have different electron numbers");
  }
  require_electrons(convention, a.electron_number);
  const double l1 = a.grid.spacing() * (a.values - b.values).cwiseAbs().sum();
  return l1 * density_distance_scale(convention);
}

DistanceRecord convert(const DistanceRecord& record, Normalization target) {
  const MetricConvention to{target, record.convention.electron_number};
  DistanceRecord out = record;
  out.d_psi = record.d_psi / wavefunction_distance_scale(record.convention) *
              wavefunction_distance_scale(to);
  out.d_n = record.d_n / density_distance_scale(record.convention) * density_distance_scale(to);
  out.convention = to;
  return out;
}

SlopeFit fit_slope_through_origin(std::span<const DistanceRecord> records) {
  if (records.size() < 2) throw MetricError("slope fit needs at least two records");
  const MetricConvention convention = records.front().convention;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& r : records) {
    if (!(r.convention == convention)) throw MetricError("slope fit over mixed conventions");
    sxy += r.d_psi * r.d_n;
    sxx += r.d_psi * r.d_psi;
  }
  if (sxx == 0.0) throw MetricError("slope undefined: every D_psi is zero");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.count = records.size();
  double sum_sq = 0.0;
  for (const auto& r : records) {
    const double predicted = fit.slope * r.d_psi;
    const double residual = r.d_n - predicted;
    sum_sq += residual * residual;
    if (predicted > 0.0) {
      fit.max_relative_deviation = std::max(fit.max_relative_deviation, std::abs(residual) / predicted);
    }
  }
  fit.rms_residual = std::sqrt(sum_sq / static_cast<double>(records.size()));
  return fit;
}

}  // namespace qmetric
