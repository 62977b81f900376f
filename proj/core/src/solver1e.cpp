#include "qmetric/solver1e.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

// Global phase: largest-magnitude amplitude real and positive.
void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  const double mag = std::abs(v[at]);
  if (mag > 0.0) v *= std::conj(v[at]) / mag;
}

Wavefunction1e to_wavefunction(const Grid& grid, const Eigen::VectorXd& interior_unit) {
  Eigen::VectorXcd interior = interior_unit.cast<std::complex<double>>() / std::sqrt(grid.spacing());
  fix_phase(interior);
  return Wavefunction1e{grid, with_walls(interior)};
}

}  // namespace

double Wavefunction1e::norm() const { return grid.spacing() * amplitudes.squaredNorm(); }

Eigen::MatrixXd TridiagonalHamiltonian::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.diagonal() = diagonal;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off_diagonal[i];
    m(i + 1, i) = off_diagonal[i];
  }
  return m;
}

TridiagonalHamiltonian build_hamiltonian(const Potential& potential) {
  const Grid& grid = potential.grid();
  const double dx = grid.spacing();
  const auto m = static_cast<Eigen::Index>(grid.interior_size());
  TridiagonalHamiltonian h;
  h.spacing = dx;
  h.diagonal = potential.values().segment(1, m).array() + 1.0 / (dx * dx);
  h.off_diagonal = Eigen::VectorXd::Constant(m - 1, -0.5 / (dx * dx));
  return h;
}

Spectrum lowest_k(const Potential& potential, std::size_t k) {
  const Grid& grid = potential.grid();
  if (k == 0 || k >= grid.interior_size()) {
    throw std::invalid_argument("lowest_k needs 1 <= k < num_points - 2, got k = " +
                                std::to_string(k));
  }
  const TridiagonalHamiltonian h = build_hamiltonian(potential);
  // computeFromTridiagonal skips the rescaling compute() does, and the
  // unscaled QR sweep occasionally stalls (e.g. harmonic well, n = 399).
  const double scale = std::max(h.diagonal.cwiseAbs().maxCoeff(), h.off_diagonal.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(h.diagonal / scale, h.off_diagonal / scale, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw SolverError("tridiagonal QR failed to converge within " +
                          std::to_string(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations) +
                          " sweeps per eigenvalue (n = " + std::to_string(h.size()) + ")",
                      static_cast<std::size_t>(h.size()), std::nan(""));
  }
  Spectrum spectrum;
  spectrum.energies.reserve(k);
  spectrum.states.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    spectrum.energies.push_back(scale * solver.eigenvalues()[col]);
    spectrum.states.push_back(to_wavefunction(grid, solver.eigenvectors().col(col)));
  }
  return spectrum;
}

EigenPair1e ground_state(const Potential& potential) {
  Spectrum s = lowest_k(potential, 1);
  return EigenPair1e{s.energies.front(), std::move(s.states.front())};
}

double residual_norm(const TridiagonalHamiltonian& h, const Wavefunction1e& psi, double energy) {
  const Eigen::VectorXcd v = interior_of(psi.amplitudes);
  const Eigen::VectorXcd r = h.apply(v) - energy * v;
  return r.norm() / v.norm();
}

Eigen::VectorXcd interior_of(const Eigen::VectorXcd& full) {
  return full.segment(1, full.size() - 2);
}

Eigen::VectorXcd with_walls(const Eigen::VectorXcd& interior) {
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(interior.size() + 2);
  full.segment(1, interior.size()) = interior;
  return full;
}

}  // namespace qmetric
