#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "qmetric/potentials.hpp"
#include "qmetric/solver1e.hpp"
#include "qmetric/solver2e.hpp"

namespace qmetric {

struct PropagationConfig {
  double field_strength = 0.01;  // a.u.
  double dt = 0.01;
  double total_time = 10.0;
  std::size_t record_stride = 10;
  /// +1 adds +eps*x (pushes the electron toward -x); -1 flips it.
  int field_sign = 1;

  void validate() const;
  std::size_t num_steps() const;
};

/// V(x) + field_strength * x
Potential perturbed_potential(const Potential& potential, double field_strength);

/// Crank-Nicolson (Cayley) step
///   (1 + i dt/2 H) psi' = (1 - i dt/2 H) psi
/// on the interior points. The left-hand tridiagonal system is factorized
/// once; each step is O(n). A negative dt runs the scheme backwards.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(TridiagonalHamiltonian hamiltonian, double dt);

  /// Advances an interior-point state in place.
  void step(Eigen::VectorXcd& interior) const;

  double dt() const noexcept { return dt_; }
  const TridiagonalHamiltonian& hamiltonian() const noexcept { return h_; }

 private:
  TridiagonalHamiltonian h_;
  double dt_;
  Eigen::VectorXcd off_;     // i dt/2 * off-diagonal
  Eigen::VectorXcd pivots_;  // U diagonal of the left-hand LU factors
  Eigen::VectorXcd lower_;   // L sub-diagonal multipliers
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Wavefunction1e> states;
  std::vector<Density> densities;
  std::vector<double> norms;
  std::vector<double> energies;  // <H> including the field
};

/// <psi|H|psi> with H on the interior points (dx quadrature).
double expectation_energy(const TridiagonalHamiltonian& h, const Wavefunction1e& psi);

/// Propagates `initial` under potential + field from t = 0, storing every
/// record_stride-th step (t = 0 included). Throws PropagationError with the
/// failing step if the state becomes non-finite.
Trajectory propagate(const Wavefunction1e& initial, const Potential& potential,
                     const PropagationConfig& config);

}  // namespace qmetric
