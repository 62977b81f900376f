#include "qmetric/solver2e.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  const double mag = std::abs(v[at]);
  if (mag > 0.0) v *= std::conj(v[at]) / mag;
}

}  // namespace

std::complex<double> Wavefunction2e::operator()(std::size_t i, std::size_t j) const {
  const std::size_t n = grid.num_points();
  if (i == j || i == 0 || j == 0 || i + 1 == n || j + 1 == n) return {0.0, 0.0};
  const PairBasis basis(grid.interior_size());
  if (i < j) return pair_amplitudes[static_cast<Eigen::Index>(basis.index(i - 1, j - 1))];
  return -pair_amplitudes[static_cast<Eigen::Index>(basis.index(j - 1, i - 1))];
}

Eigen::MatrixXcd Wavefunction2e::to_matrix() const {
  const auto n = static_cast<Eigen::Index>(grid.num_points());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const PairBasis basis(grid.interior_size());
  const std::size_t interior = basis.interior_points();
  for (std::size_t i = 0; i < interior; ++i) {
    for (std::size_t j = i + 1; j < interior; ++j) {
      const auto c = pair_amplitudes[static_cast<Eigen::Index>(basis.index(i, j))];
      m(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(j + 1)) = c;
      m(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(i + 1)) = -c;
    }
  }
  return m;
}

double Wavefunction2e::norm() const {
  const double dx = grid.spacing();
  return 2.0 * dx * dx * pair_amplitudes.squaredNorm();
}

double Density::integral() const { return grid.spacing() * values.sum(); }

Eigen::MatrixXd interaction_kernel(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.num_points());
  const Eigen::VectorXd x = grid.points();
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) w(i, j) = 1.0 / (std::abs(x[i] - x[j]) + 1.0);
  }
  return w;
}

PairHamiltonian::PairHamiltonian(const Potential& potential, double interaction_scale)
    : basis_(potential.grid().interior_size()) {
  const Grid& grid = potential.grid();
  const double dx = grid.spacing();
  hop_ = -0.5 / (dx * dx);
  const std::size_t m = basis_.interior_points();
  diagonal_.resize(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = grid.x(i + 1);
    const double vi = potential[i + 1];
    for (std::size_t j = i + 1; j < m; ++j) {
      const double w = 1.0 / (std::abs(xi - grid.x(j + 1)) + 1.0);
      diagonal_[static_cast<Eigen::Index>(basis_.index(i, j))] =
          2.0 / (dx * dx) + vi + potential[j + 1] + interaction_scale * w;
    }
  }
}

void PairHamiltonian::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  const auto m = static_cast<std::ptrdiff_t>(basis_.interior_points());
  out.resize(in.size());
  // Hops that would land on i == j drop out: the antisymmetric amplitude there is zero.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const std::size_t row = basis_.row_start(ui);
    const std::size_t row_up = i > 0 ? basis_.row_start(ui - 1) : 0;
    const std::size_t row_down = basis_.row_start(ui + 1);
    for (std::ptrdiff_t j = i + 1; j < m; ++j) {
      const auto k = static_cast<Eigen::Index>(row + static_cast<std::size_t>(j - i - 1));
      double acc = diagonal_[k] * in[k];
      if (j > i + 1) acc += hop_ * in[k - 1];
      if (j + 1 < m) acc += hop_ * in[k + 1];
      if (i > 0) acc += hop_ * in[static_cast<Eigen::Index>(row_up + static_cast<std::size_t>(j - i))];
      if (j > i + 1) {
        acc += hop_ * in[static_cast<Eigen::Index>(row_down + static_cast<std::size_t>(j - i - 2))];
      }
      out[k] = acc;
    }
  }
}

Wavefunction2e slater_determinant(const Wavefunction1e& a, const Wavefunction1e& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("orbitals live on different grids");
  const Grid& grid = a.grid;
  const PairBasis basis(grid.interior_size());
  const std::size_t m = basis.interior_points();
  Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.size()));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto ai = a.amplitudes[static_cast<Eigen::Index>(i + 1)];
    const auto bi = b.amplitudes[static_cast<Eigen::Index>(i + 1)];
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto aj = a.amplitudes[static_cast<Eigen::Index>(j + 1)];
      const auto bj = b.amplitudes[static_cast<Eigen::Index>(j + 1)];
      c[static_cast<Eigen::Index>(basis.index(i, j))] = (ai * bj - bi * aj) * inv_sqrt2;
    }
  }
  return Wavefunction2e{grid, std::move(c)};
}

GroundState2e ground_state_noninteracting(const Potential& potential) {
  const Spectrum orbitals = lowest_k(potential, 2);
  Wavefunction2e psi = slater_determinant(orbitals.states[0], orbitals.states[1]);
  fix_phase(psi.pair_amplitudes);
  return GroundState2e{orbitals.energies[0] + orbitals.energies[1], std::move(psi), 0, 0.0};
}

GroundState2e ground_state_interacting(const Potential& potential, const Solver2eOptions& options) {
  const Grid& grid = potential.grid();
  const PairBasis basis(grid.interior_size());
  if (basis.size() > options.max_basis) {
    throw CapacityError("pair basis of " + std::to_string(basis.size()) +
                        " states exceeds the configured limit of " +
                        std::to_string(options.max_basis));
  }
  if (basis.size() == 0) throw std::invalid_argument("grid too small for two electrons");

  const PairHamiltonian h(potential, options.interaction_scale);

  Eigen::VectorXd start;
  if (grid.interior_size() >= 3) {
    start = ground_state_noninteracting(potential).state.pair_amplitudes.real();
  } else {
    start = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(basis.size()));
  }

  const LinearOperator apply = [&h](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    h.apply(in, out);
  };
  const LanczosResult result = lowest_eigenpair(apply, start, options.lanczos);

  const double dx = grid.spacing();
  Eigen::VectorXcd c = result.eigenvector.cast<std::complex<double>>() / std::sqrt(2.0 * dx * dx);
  fix_phase(c);
  return GroundState2e{result.eigenvalue, Wavefunction2e{grid, std::move(c)}, result.matvecs,
                       result.residual};
}

Density density_from_2e(const Wavefunction2e& psi) {
  const Grid& grid = psi.grid;
  const double dx = grid.spacing();
  const PairBasis basis(grid.interior_size());
  const std::size_t m = basis.interior_points();
  Eigen::VectorXd n = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.num_points()));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double p = 2.0 * dx * std::norm(psi.pair_amplitudes[static_cast<Eigen::Index>(basis.index(i, j))]);
      n[static_cast<Eigen::Index>(i + 1)] += p;
      n[static_cast<Eigen::Index>(j + 1)] += p;
    }
  }
  return Density{grid, std::move(n), 2};
}

Density density_from_1e(const Wavefunction1e& psi) {
  return Density{psi.grid, psi.amplitudes.cwiseAbs2(), 1};
}

}  // namespace qmetric
