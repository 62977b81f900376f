#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qmetric/solver1e.hpp"

using namespace qmetric;

namespace {

Potential harmonic(const Grid& g, double shift = 0.0) {
  return Potential(g, (0.5 * g.points().array().square() + shift).matrix());
}

Potential flat(const Grid& g) { return Potential(g, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_points()))); }

int sign_changes(const Wavefunction1e& psi) {
  const Eigen::VectorXd re = psi.amplitudes.real();
  const double floor = 1e-6 * re.cwiseAbs().maxCoeff();
  int changes = 0;
  int last = 0;
  for (Eigen::Index i = 0; i < re.size(); ++i) {
    if (std::abs(re[i]) < floor) continue;
    const int s = re[i] > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

TEST_CASE("stencil on a three-point interior") {
  const Grid g(2.0, 5);  // dx = 1
  const auto h = build_hamiltonian(flat(g));
  REQUIRE(h.size() == 3);
  CHECK(h.diagonal.isApprox(Eigen::Vector3d(1, 1, 1)));
  CHECK(h.off_diagonal.isApprox(Eigen::Vector2d(-0.5, -0.5)));
  const Eigen::MatrixXd d = h.dense();
  CHECK(d == d.transpose());
}

TEST_CASE("constant shift moves every eigenvalue by the shift") {
  const Grid g(8.0, 161);
  const auto base = lowest_k(harmonic(g), 4);
  const auto shifted = lowest_k(harmonic(g, 0.75), 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(shifted.energies[k] - base.energies[k] == doctest::Approx(0.75).epsilon(1e-10));
  }
}

TEST_CASE("particle in a box ground energy converges to pi^2/(2 * 30^2)") {
  const double exact = oracle::box_level(1, 30.0);
  double previous_error = 1.0;
  for (std::size_t n : {151, 301, 601}) {
    const double e0 = ground_state(flat(Grid(15.0, n))).energy;
    const double error = std::abs(e0 - exact);
    CHECK(error < previous_error);
    previous_error = error;
  }
  CHECK(previous_error / exact < 0.01);
}

TEST_CASE("harmonic oscillator ground state") {
  const Grid g(10.0, 401);  // dx = 0.05
  const auto gs = ground_state(harmonic(g));
  CHECK(std::abs(gs.energy - 0.5) < 1e-3);
  CHECK(gs.state.norm() == doctest::Approx(1.0).epsilon(1e-10));
  const double c = std::pow(std::numbers::pi, -0.25);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const double x = g.x(i);
    worst = std::max(worst, std::abs(gs.state.amplitudes[static_cast<Eigen::Index>(i)].real() - c * std::exp(-0.5 * x * x)));
  }
  CHECK(worst < 1e-3);
  CHECK(ground_state(harmonic(g, 1.0)).energy == doctest::Approx(gs.energy + 1.0).epsilon(1e-12));
}

TEST_CASE("harmonic ladder and box ratio") {
  const auto ladder = lowest_k(harmonic(Grid(10.0, 401)), 3);
  CHECK(ladder.energies[0] == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(ladder.energies[1] == doctest::Approx(1.5).epsilon(2e-3));
  CHECK(ladder.energies[2] == doctest::Approx(2.5).epsilon(2e-3));

  const auto box = lowest_k(flat(Grid(15.0, 601)), 2);
  CHECK(box.energies[1] / box.energies[0] == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("lowest_k(1) equals ground_state") {
  const Grid g(15.0, 301);
  const Potential v = fourier_potential(load_preset_family(PresetFamily::one_electron)[4], g);
  const auto gs = ground_state(v);
  const auto k1 = lowest_k(v, 1);
  CHECK(k1.energies[0] == gs.energy);
  CHECK(k1.states[0].amplitudes == gs.state.amplitudes);
}

TEST_CASE("lowest_k argument bounds") {
  const Grid g(15.0, 11);
  CHECK_THROWS_AS(lowest_k(flat(g), 0), std::invalid_argument);
  CHECK_THROWS_AS(lowest_k(flat(g), 9), std::invalid_argument);
  CHECK_NOTHROW(lowest_k(flat(g), 8));
}

TEST_CASE("eigenpairs of preset potentials: residual, orthonormality, nodes, phase") {
  const Grid g(15.0, 301);
  for (const auto& spec : load_preset_family(PresetFamily::one_electron)) {
    const Potential v = fourier_potential(spec, g);
    const auto h = build_hamiltonian(v);
    const auto s = lowest_k(v, 5);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(residual_norm(h, s.states[k], s.energies[k]) < 1e-8);
      CHECK(s.states[k].norm() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(s.states[k].amplitudes[0] == std::complex<double>(0.0));
      CHECK(s.states[k].amplitudes[300] == std::complex<double>(0.0));
      CHECK(sign_changes(s.states[k]) == static_cast<int>(k));
      if (k > 0) CHECK(s.energies[k] > s.energies[k - 1]);
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(std::abs(g.spacing() * s.states[j].amplitudes.dot(s.states[k].amplitudes)) < 1e-8);
      }
      Eigen::Index at = 0;
      s.states[k].amplitudes.cwiseAbs().maxCoeff(&at);
      CHECK(s.states[k].amplitudes[at].real() > 0.0);
      CHECK(s.states[k].amplitudes[at].imag() == 0.0);
    }
  }
}

TEST_CASE("harmonic ground energy error falls by about 4 when dx halves") {
  const double e1 = ground_state(harmonic(Grid(10.0, 101))).energy - 0.5;
  const double e2 = ground_state(harmonic(Grid(10.0, 201))).energy - 0.5;
  const double e3 = ground_state(harmonic(Grid(10.0, 401))).energy - 0.5;
  CHECK(std::abs(e1 / e2) == doctest::Approx(4.0).epsilon(0.1));
  CHECK(std::abs(e2 / e3) == doctest::Approx(4.0).epsilon(0.1));
}
