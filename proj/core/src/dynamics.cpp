#include "qmetric/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

using cplx = std::complex<double>;

void PropagationConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(total_time >= dt) || !std::isfinite(total_time)) {
    throw std::invalid_argument("total_time must be at least dt");
  }
  if (!std::isfinite(field_strength)) throw std::invalid_argument("field strength must be finite");
  if (record_stride == 0) throw std::invalid_argument("record_stride must be positive");
  if (field_sign != 1 && field_sign != -1) throw std::invalid_argument("field_sign must be +1 or -1");
}

std::size_t PropagationConfig::num_steps() const {
  return static_cast<std::size_t>(std::llround(total_time / dt));
}

Potential perturbed_potential(const Potential& potential, double field_strength) {
  if (!std::isfinite(field_strength)) throw std::invalid_argument("field strength must be finite");
  Eigen::VectorXd v = potential.values() + field_strength * potential.grid().points();
  return Potential(potential.grid(), std::move(v));
}

CrankNicolsonStepper::CrankNicolsonStepper(TridiagonalHamiltonian hamiltonian, double dt)
    : h_(std::move(hamiltonian)), dt_(dt) {
  const Eigen::Index n = h_.size();
  const cplx half(0.0, 0.5 * dt_);
  off_ = half * h_.off_diagonal.cast<cplx>();
  pivots_.resize(n);
  lower_ = Eigen::VectorXcd::Zero(n);
  pivots_[0] = 1.0 + half * h_.diagonal[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    lower_[i] = off_[i - 1] / pivots_[i - 1];
    pivots_[i] = 1.0 + half * h_.diagonal[i] - lower_[i] * off_[i - 1];
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(pivots_[i]) == 0.0 || !std::isfinite(std::abs(pivots_[i]))) {
      throw PropagationError("Crank-Nicolson factorization hit a zero pivot at row " +
                                 std::to_string(i),
                             0);
    }
  }
}

void CrankNicolsonStepper::step(Eigen::VectorXcd& v) const {
  const Eigen::Index n = h_.size();
  const cplx half(0.0, 0.5 * dt_);
  // rhs = (1 - i dt/2 H) v, then forward substitution in place.
  Eigen::VectorXcd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx hv = h_.diagonal[i] * v[i];
    if (i > 0) hv += h_.off_diagonal[i - 1] * v[i - 1];
    if (i + 1 < n) hv += h_.off_diagonal[i] * v[i + 1];
    y[i] = v[i] - half * hv;
    if (i > 0) y[i] -= lower_[i] * y[i - 1];
  }
  v[n - 1] = y[n - 1] / pivots_[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) v[i] = (y[i] - off_[i] * v[i + 1]) / pivots_[i];
}

double expectation_energy(const TridiagonalHamiltonian& h, const Wavefunction1e& psi) {
  const Eigen::VectorXcd v = interior_of(psi.amplitudes);
  return h.spacing * v.dot(h.apply(v)).real();
}

Trajectory propagate(const Wavefunction1e& initial, const Potential& potential,
                     const PropagationConfig& config) {
  config.validate();
  if (!(initial.grid == potential.grid())) {
    throw std::invalid_argument("initial state and potential use different grids");
  }
  const Grid& grid = potential.grid();
  const Potential driven =
      perturbed_potential(potential, config.field_sign * config.field_strength);
  const CrankNicolsonStepper stepper(build_hamiltonian(driven), config.dt);

  Trajectory out;
  auto record = [&](std::size_t step, const Eigen::VectorXcd& interior) {
    Wavefunction1e psi{grid, with_walls(interior)};
    out.times.push_back(static_cast<double>(step) * config.dt);
    out.norms.push_back(psi.norm());
    out.energies.push_back(expectation_energy(stepper.hamiltonian(), psi));
    out.densities.push_back(density_from_1e(psi));
    out.states.push_back(std::move(psi));
  };

  Eigen::VectorXcd v = interior_of(initial.amplitudes);
  record(0, v);
  const std::size_t steps = config.num_steps();
  for (std::size_t k = 1; k <= steps; ++k) {
    stepper.step(v);
    if (!v.allFinite()) {
      throw PropagationError("state became non-finite at step " + std::to_string(k), k);
    }
    if (k % config.record_stride == 0) record(k, v);
  }
  return out;
}

}  // namespace qmetric
