#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

#include "qmetric/grid.hpp"
#include "qmetric/lanczos.hpp"
#include "qmetric/potentials.hpp"
#include "qmetric/solver1e.hpp"

namespace qmetric {

/// Ordered pairs (i, j), i < j, over the m interior grid points.
class PairBasis {
 public:
  explicit PairBasis(std::size_t interior_points) : m_(interior_points) {}

  std::size_t interior_points() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_ * (m_ - 1) / 2; }

  /// Requires i < j < interior_points().
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return row_start(i) + (j - i - 1);
  }

  /// Offset of pair (i, i + 1); rows are stored contiguously.
  std::size_t row_start(std::size_t i) const noexcept { return i * m_ - i * (i + 1) / 2; }

 private:
  std::size_t m_;
};

/// Antisymmetric two-electron state psi(x_i, x_j) = -psi(x_j, x_i).
///
/// Only the i < j interior triangle is stored; the diagonal and the walls
/// are zero by construction. Unit normalized: dx^2 sum_{i,j} |psi|^2 = 1.
struct Wavefunction2e {
  Grid grid;
  Eigen::VectorXcd pair_amplitudes;

  /// Amplitude at full-grid indices (i, j).
  std::complex<double> operator()(std::size_t i, std::size_t j) const;

  /// Full num_points x num_points field.
  Eigen::MatrixXcd to_matrix() const;

  double norm() const;
};

struct Density {
  Grid grid;
  Eigen::VectorXd values;
  int electron_number = 1;

  /// dx * sum n_i
  double integral() const;
};

/// W_ij = 1 / (|x_i - x_j| + 1) on the full grid.
Eigen::MatrixXd interaction_kernel(const Grid& grid);

/// h (x) 1 + 1 (x) h + lambda W restricted to the antisymmetric pair basis.
class PairHamiltonian {
 public:
  PairHamiltonian(const Potential& potential, double interaction_scale);

  std::size_t size() const noexcept { return basis_.size(); }
  const PairBasis& basis() const noexcept { return basis_; }
  const Eigen::VectorXd& diagonal() const noexcept { return diagonal_; }

  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;

 private:
  PairBasis basis_;
  Eigen::VectorXd diagonal_;
  double hop_;
};

struct Solver2eOptions {
  double interaction_scale = 1.0;
  LanczosOptions lanczos{};
  /// Upper bound on the pair-basis dimension.
  std::size_t max_basis = 2'000'000;
};

struct GroundState2e {
  double energy;
  Wavefunction2e state;
  std::size_t matvecs = 0;
  double residual = 0.0;
};

/// Interacting ground state in the antisymmetric sector (reduced Coulomb
/// 1/(|x-x'|+1) scaled by options.interaction_scale).
GroundState2e ground_state_interacting(const Potential& potential,
                                       const Solver2eOptions& options = {});

/// Slater determinant of the two lowest orbitals; energy e_0 + e_1.
GroundState2e ground_state_noninteracting(const Potential& potential);

/// (phi_a(x) phi_b(x') - phi_b(x) phi_a(x')) / sqrt(2)
Wavefunction2e slater_determinant(const Wavefunction1e& a, const Wavefunction1e& b);

/// n(x_i) = 2 dx sum_j |psi(x_i, x_j)|^2
Density density_from_2e(const Wavefunction2e& psi);

/// n(x_i) = |psi_i|^2
Density density_from_1e(const Wavefunction1e& psi);

}  // namespace qmetric
