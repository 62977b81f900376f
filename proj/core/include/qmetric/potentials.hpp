#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qmetric/grid.hpp"

namespace qmetric {

/// Confining envelope plus a truncated random Fourier series:
///
///   V(x) = scale * x^power + strength * sum_n (a_n cos(n pi x / L) + b_n sin(n pi x / L))
///
/// with L the grid half length.
struct FourierPotentialSpec {
  std::vector<double> cos_coeffs;  // a_1 .. a_M
  std::vector<double> sin_coeffs;  // b_1 .. b_M
  double microwell_strength = 1.0;
  int confinement_power = 10;
  double confinement_scale = 1e-11;

  std::size_t num_terms() const noexcept { return cos_coeffs.size(); }

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

struct PolynomialTerm {
  int power;
  double coefficient;
};

/// Even polynomial, optionally with the x^10 / 10^11 envelope on top.
struct PolynomialPotentialSpec {
  std::vector<PolynomialTerm> terms;
  bool confinement_envelope = true;

  /// c[k-1] multiplies x^(2k).
  static PolynomialPotentialSpec from_even_coefficients(std::vector<double> c, bool envelope);

  void validate() const;
};

/// Real-space potential sampled on a grid.
class Potential {
 public:
  Potential(Grid grid, Eigen::VectorXd values);

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

 private:
  Grid grid_;
  Eigen::VectorXd values_;
};

Potential fourier_potential(const FourierPotentialSpec& spec, const Grid& grid);
Potential polynomial_potential(const PolynomialPotentialSpec& spec, const Grid& grid);

/// Draws `count` specs with every a_n, b_n i.i.d. uniform on [-L/3, L/3].
///
/// Member k uses its own generator seeded with derive_seed(seed, k) and draws
/// a_1, b_1, a_2, b_2, ... in that order, so members can be produced
/// independently and in any order.
std::vector<FourierPotentialSpec> sample_fourier_family(std::uint64_t seed, std::size_t count,
                                                        double microwell_strength,
                                                        const Grid& grid,
                                                        std::size_t num_terms = 3);

/// Random even polynomials: c_k uniform on [-range, range] for x^(2k), k = 1..K.
std::vector<PolynomialPotentialSpec> sample_polynomial_family(std::uint64_t seed,
                                                              std::size_t count,
                                                              std::size_t num_terms = 5,
                                                              double range = 0.5,
                                                              bool envelope = true);

enum class PresetFamily { one_electron, two_electron };

/// Half length (a.u.) the bundled coefficient table was generated for.
inline constexpr double kPresetHalfLength = 15.0;

/// Table column feeding each coefficient slot (a_1, b_1, a_2, b_2, a_3, b_3).
/// The source table only labels its columns a..f.
inline constexpr std::array<std::size_t, 6> kPresetColumnOrder = {0, 1, 2, 3, 4, 5};

/// The ten bundled systems of a family. Coefficients already include the
/// microwell strength, so every spec carries microwell_strength = 1.
std::vector<FourierPotentialSpec> load_preset_family(PresetFamily which);

/// The bundled coefficient table, verbatim.
std::string_view preset_table_csv() noexcept;

Potential shift_to_ground_energy(const Potential& potential, double ground_energy);

/// Interior local minima, counted from sign changes of the forward difference.
std::size_t count_interior_minima(const Potential& potential);

}  // namespace qmetric
