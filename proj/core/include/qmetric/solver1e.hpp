#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "qmetric/grid.hpp"
#include "qmetric/potentials.hpp"

namespace qmetric {

/// Single-electron state on the full grid. Boundary amplitudes are zero.
struct Wavefunction1e {
  Grid grid;
  Eigen::VectorXcd amplitudes;

  /// dx * sum |psi_i|^2
  double norm() const;
};

/// -1/2 d^2/dx^2 + V on the interior points, 3-point stencil, Dirichlet walls
/// at x = -L and x = +L.
struct TridiagonalHamiltonian {
  Eigen::VectorXd diagonal;      // 1/dx^2 + V_i
  Eigen::VectorXd off_diagonal;  // -1/(2 dx^2)
  double spacing = 0.0;

  Eigen::Index size() const noexcept { return diagonal.size(); }

  template <typename Vec>
  Vec apply(const Vec& v) const {
    Vec out = diagonal.cast<typename Vec::Scalar>().cwiseProduct(v);
    const Eigen::Index n = size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      out[i] += off_diagonal[i] * v[i + 1];
      out[i + 1] += off_diagonal[i] * v[i];
    }
    return out;
  }

  Eigen::MatrixXd dense() const;
};

TridiagonalHamiltonian build_hamiltonian(const Potential& potential);

struct EigenPair1e {
  double energy;
  Wavefunction1e state;
};

struct Spectrum {
  std::vector<double> energies;
  std::vector<Wavefunction1e> states;
};

/// Lowest eigenpair; unit norm, largest-magnitude amplitude real positive.
EigenPair1e ground_state(const Potential& potential);

/// The k lowest eigenpairs in ascending order. Requires 1 <= k < num_points - 2.
Spectrum lowest_k(const Potential& potential, std::size_t k);

/// ||H psi - E psi|| / ||psi|| over the interior points.
double residual_norm(const TridiagonalHamiltonian& h, const Wavefunction1e& psi, double energy);

/// Interior slice of a full-grid vector and its inverse (zero walls).
Eigen::VectorXcd interior_of(const Eigen::VectorXcd& full);
Eigen::VectorXcd with_walls(const Eigen::VectorXcd& interior);

}  // namespace qmetric
