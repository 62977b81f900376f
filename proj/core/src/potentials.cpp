#include "qmetric/potentials.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "preset_table.hpp"
#include "qmetric/rng.hpp"

namespace qmetric {

namespace {

double int_power(double x, int power) {
  double result = 1.0;
  for (int k = 0; k < power; ++k) result *= x;
  return result;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad number in preset table: " + std::string(s));
  }
  return value;
}

}  // namespace

void FourierPotentialSpec::validate() const {
  if (cos_coeffs.empty()) throw std::invalid_argument("Fourier spec needs at least one term");
  if (cos_coeffs.size() != sin_coeffs.size()) {
    throw std::invalid_argument("Fourier spec: cos and sin coefficient counts differ");
  }
  if (confinement_power < 0 || confinement_power % 2 != 0) {
    throw std::invalid_argument("confinement power must be a non-negative even integer");
  }
  if (!std::isfinite(microwell_strength) || !std::isfinite(confinement_scale)) {
    throw std::invalid_argument("Fourier spec scales must be finite");
  }
  for (std::size_t n = 0; n < cos_coeffs.size(); ++n) {
    if (!std::isfinite(cos_coeffs[n]) || !std::isfinite(sin_coeffs[n])) {
      throw std::invalid_argument("Fourier coefficients must be finite");
    }
  }
}

PolynomialPotentialSpec PolynomialPotentialSpec::from_even_coefficients(std::vector<double> c,
                                                                        bool envelope) {
  PolynomialPotentialSpec spec;
  spec.confinement_envelope = envelope;
  for (std::size_t k = 0; k < c.size(); ++k) {
    spec.terms.push_back({static_cast<int>(2 * (k + 1)), c[k]});
  }
  return spec;
}

void PolynomialPotentialSpec::validate() const {
  for (const auto& term : terms) {
    if (term.power <= 0 || term.power % 2 != 0) {
      throw std::invalid_argument("polynomial potential accepts only positive even powers, got " +
                                  std::to_string(term.power));
    }
    if (!std::isfinite(term.coefficient)) {
      throw std::invalid_argument("polynomial coefficients must be finite");
    }
  }
}

Potential::Potential(Grid grid, Eigen::VectorXd values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.num_points()) {
    throw std::invalid_argument("potential length does not match grid");
  }
  if (!values_.allFinite()) throw std::invalid_argument("potential has non-finite values");
}

Potential fourier_potential(const FourierPotentialSpec& spec, const Grid& grid) {
  spec.validate();
  const double L = grid.half_length();
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.num_points()));
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    const double x = grid.x(i);
    double series = 0.0;
    for (std::size_t n = 0; n < spec.num_terms(); ++n) {
      const double k = static_cast<double>(n + 1) * std::numbers::pi * x / L;
      series += spec.cos_coeffs[n] * std::cos(k) + spec.sin_coeffs[n] * std::sin(k);
    }
    v[static_cast<Eigen::Index>(i)] =
        spec.confinement_scale * int_power(x, spec.confinement_power) +
        spec.microwell_strength * series;
  }
  return Potential(grid, std::move(v));
}

Potential polynomial_potential(const PolynomialPotentialSpec& spec, const Grid& grid) {
  spec.validate();
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.num_points()));
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    const double x = grid.x(i);
    double value = spec.confinement_envelope ? 1e-11 * int_power(x, 10) : 0.0;
    for (const auto& term : spec.terms) value += term.coefficient * int_power(x, term.power);
    v[static_cast<Eigen::Index>(i)] = value;
  }
  return Potential(grid, std::move(v));
}

std::vector<FourierPotentialSpec> sample_fourier_family(std::uint64_t seed, std::size_t count,
                                                        double microwell_strength,
                                                        const Grid& grid,
                                                        std::size_t num_terms) {
  if (count == 0) throw std::invalid_argument("family size must be at least 1");
  if (num_terms == 0) throw std::invalid_argument("Fourier family needs at least one term");
  const double bound = grid.half_length() / 3.0;
  std::vector<FourierPotentialSpec> family(count);
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, k));
    auto& spec = family[k];
    spec.microwell_strength = microwell_strength;
    spec.cos_coeffs.resize(num_terms);
    spec.sin_coeffs.resize(num_terms);
    for (std::size_t n = 0; n < num_terms; ++n) {
      spec.cos_coeffs[n] = rng.uniform(-bound, bound);
      spec.sin_coeffs[n] = rng.uniform(-bound, bound);
    }
    spec.validate();
  }
  return family;
}

std::vector<PolynomialPotentialSpec> sample_polynomial_family(std::uint64_t seed,
                                                              std::size_t count,
                                                              std::size_t num_terms,
                                                              double range, bool envelope) {
  if (count == 0) throw std::invalid_argument("family size must be at least 1");
  std::vector<PolynomialPotentialSpec> family;
  family.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, k));
    std::vector<double> c(num_terms);
    for (auto& value : c) value = rng.uniform(-range, range);
    family.push_back(PolynomialPotentialSpec::from_even_coefficients(std::move(c), envelope));
  }
  return family;
}

std::string_view preset_table_csv() noexcept { return detail::kPresetTableCsv; }

std::vector<FourierPotentialSpec> load_preset_family(PresetFamily which) {
  const std::string_view wanted =
      which == PresetFamily::one_electron ? "one_electron" : "two_electron";
  std::vector<FourierPotentialSpec> family;
  bool header = true;
  for (auto line : split(preset_table_csv(), '\n')) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 8) throw std::runtime_error("preset table row has wrong width");
    if (fields[0] != wanted) continue;
    std::array<double, 6> columns{};
    for (std::size_t c = 0; c < 6; ++c) columns[c] = parse_double(fields[c + 2]);

    FourierPotentialSpec spec;
    spec.microwell_strength = 1.0;
    spec.cos_coeffs.resize(3);
    spec.sin_coeffs.resize(3);
    for (std::size_t n = 0; n < 3; ++n) {
      spec.cos_coeffs[n] = columns[kPresetColumnOrder[2 * n]];
      spec.sin_coeffs[n] = columns[kPresetColumnOrder[2 * n + 1]];
    }
    family.push_back(std::move(spec));
  }
  return family;
}

Potential shift_to_ground_energy(const Potential& potential, double ground_energy) {
  if (!std::isfinite(ground_energy)) throw std::invalid_argument("ground energy must be finite");
  Eigen::VectorXd shifted = potential.values().array() - ground_energy;
  return Potential(potential.grid(), std::move(shifted));
}

std::size_t count_interior_minima(const Potential& potential) {
  const auto& v = potential.values();
  std::size_t minima = 0;
  int previous = 0;  // sign of the last non-zero difference
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
    const double diff = v[i + 1] - v[i];
    const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (previous < 0 && sign > 0) ++minima;
    previous = sign;
  }
  return minima;
}

}  // namespace qmetric
