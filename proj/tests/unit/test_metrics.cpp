#include <cmath>
#include <vector>

#include "doctest.h"
#include "qmetric/metrics.hpp"
#include "qmetric/rng.hpp"

using namespace qmetric;

namespace {

const MetricConvention kOne{Normalization::natural, 1};
const MetricConvention kTwo{Normalization::natural, 2};

Wavefunction1e random_state(const Grid& g, Rng& rng) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.num_points()));
  for (Eigen::Index i = 1; i + 1 < a.size(); ++i) a[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  a /= std::sqrt(g.spacing() * a.squaredNorm());
  return {g, a};
}

Density random_density(const Grid& g, Rng& rng, int electrons) {
  Eigen::VectorXd n(static_cast<Eigen::Index>(g.num_points()));
  for (Eigen::Index i = 0; i < n.size(); ++i) n[i] = rng.uniform01();
  n *= electrons / (g.spacing() * n.sum());
  return {g, n, electrons};
}

// Orbitals at disjoint supports: zero overlap, disjoint densities.
Wavefunction1e bump(const Grid& g, std::size_t from, std::size_t to) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.num_points()));
  for (std::size_t i = from; i < to; ++i) a[static_cast<Eigen::Index>(i)] = 1.0;
  a /= std::sqrt(g.spacing() * a.squaredNorm());
  return {g, a};
}

}  // namespace

TEST_CASE("identical states are at distance zero") {
  const Grid g(15.0, 101);
  const auto psi = ground_state(fourier_potential(load_preset_family(PresetFamily::one_electron)[0], g)).state;
  CHECK(wavefunction_distance(psi, psi, kOne) < 1e-14);
  CHECK(density_distance(density_from_1e(psi), density_from_1e(psi), kOne) == 0.0);
}

TEST_CASE("orthogonal disjoint states reach the maxima") {
  const Grid g(10.0, 101);
  const auto a = bump(g, 5, 30);
  const auto b = bump(g, 60, 90);
  CHECK(wavefunction_distance(a, b, kOne) == doctest::Approx(std::sqrt(2.0)));
  CHECK(density_distance(density_from_1e(a), density_from_1e(b), kOne) == doctest::Approx(2.0));

  const auto c = bump(g, 30, 45);
  const auto d = bump(g, 90, 99);
  const Wavefunction2e ab = slater_determinant(a, c);
  const Wavefunction2e cd = slater_determinant(b, d);
  CHECK(wavefunction_distance(ab, cd, kTwo) == doctest::Approx(2.0));
  CHECK(density_distance(density_from_2e(ab), density_from_2e(cd), kTwo) == doctest::Approx(4.0));
  const MetricConvention unit{Normalization::unit, 2};
  CHECK(wavefunction_distance(ab, cd, unit) == doctest::Approx(1.0));
  CHECK(density_distance(density_from_2e(ab), density_from_2e(cd), unit) == doctest::Approx(1.0));
  const MetricConvention pe{Normalization::per_electron, 2};
  CHECK(wavefunction_distance(ab, cd, pe) == doctest::Approx(std::sqrt(2.0)));
  CHECK(density_distance(density_from_2e(ab), density_from_2e(cd), pe) == doctest::Approx(2.0));
}

TEST_CASE("hand-computed overlap") {
  // Two-point interior, dx = 1: psi = (1, 0), phi = (cos t, sin t).
  const Grid g(1.5, 4);
  const double t = 0.4;
  Wavefunction1e psi{g, Eigen::VectorXcd::Zero(4)};
  psi.amplitudes[1] = 1.0;
  Wavefunction1e phi{g, Eigen::VectorXcd::Zero(4)};
  phi.amplitudes[1] = std::cos(t);
  phi.amplitudes[2] = std::sin(t);
  CHECK(wavefunction_distance(psi, phi, kOne) == doctest::Approx(std::sqrt(2.0 - 2.0 * std::cos(t))));
  const double expected_n = std::abs(1.0 - std::cos(t) * std::cos(t)) + std::sin(t) * std::sin(t);
  CHECK(density_distance(density_from_1e(psi), density_from_1e(phi), kOne) == doctest::Approx(expected_n));
}

TEST_CASE("global phase does not change the distances") {
  const Grid g(15.0, 81);
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_state(g, rng);
    const auto b = random_state(g, rng);
    auto rotated = b;
    rotated.amplitudes *= std::polar(1.0, rng.uniform(0.0, 6.283));
    CHECK(std::abs(wavefunction_distance(a, b, kOne) - wavefunction_distance(a, rotated, kOne)) < 1e-12);

    const auto s = slater_determinant(a, b);
    auto s2 = slater_determinant(rotated, random_state(g, rng));
    auto s2r = s2;
    s2r.pair_amplitudes *= std::polar(1.0, rng.uniform(0.0, 6.283));
    CHECK(std::abs(wavefunction_distance(s, s2, kTwo) - wavefunction_distance(s, s2r, kTwo)) < 1e-12);
  }
}

TEST_CASE("metric axioms on random triples") {
  const Grid g(15.0, 61);
  Rng rng(2024);
  for (int k = 0; k < 120; ++k) {
    const auto a = random_state(g, rng);
    const auto b = random_state(g, rng);
    const auto c = random_state(g, rng);
    const double ab = wavefunction_distance(a, b, kOne);
    const double bc = wavefunction_distance(b, c, kOne);
    const double ac = wavefunction_distance(a, c, kOne);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(wavefunction_distance(b, a, kOne)).epsilon(1e-12));
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab <= std::sqrt(2.0) + 1e-12);

    const auto na = random_density(g, rng, 1);
    const auto nb = random_density(g, rng, 1);
    const auto nc = random_density(g, rng, 1);
    const double dab = density_distance(na, nb, kOne);
    CHECK(dab == density_distance(nb, na, kOne));
    CHECK(density_distance(na, nc, kOne) <= dab + density_distance(nb, nc, kOne) + 1e-12);
    CHECK(dab <= 2.0 + 1e-12);
  }
}

TEST_CASE("metric axioms for two-electron Slater states") {
  const Grid g(15.0, 41);
  Rng rng(77);
  auto draw = [&] {
    // Orthonormalize two random orbitals so the determinant is unit norm.
    auto p = random_state(g, rng);
    auto q = random_state(g, rng);
    q.amplitudes -= g.spacing() * p.amplitudes.dot(q.amplitudes) * p.amplitudes;
    q.amplitudes /= std::sqrt(q.norm());
    return slater_determinant(p, q);
  };
  for (int k = 0; k < 100; ++k) {
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double ab = wavefunction_distance(a, b, kTwo);
    CHECK(ab == doctest::Approx(wavefunction_distance(b, a, kTwo)).epsilon(1e-12));
    CHECK(wavefunction_distance(a, c, kTwo) <= ab + wavefunction_distance(b, c, kTwo) + 1e-12);
    CHECK(ab <= 2.0 + 1e-12);
    const auto na = density_from_2e(a);
    const auto nb = density_from_2e(b);
    const auto nc = density_from_2e(c);
    CHECK(density_distance(na, nc, kTwo) <= density_distance(na, nb, kTwo) + density_distance(nb, nc, kTwo) + 1e-12);
    CHECK(density_distance(na, nb, kTwo) <= 4.0 + 1e-12);
  }
}

TEST_CASE("conventions convert into each other") {
  const DistanceRecord natural{"1", "2", std::nullopt, 1.2, 2.5, {Normalization::natural, 2}};
  const auto unit = convert(natural, Normalization::unit);
  CHECK(unit.d_psi == doctest::Approx(1.2 / 2.0));
  CHECK(unit.d_n == doctest::Approx(2.5 / 4.0));
  const auto pe = convert(unit, Normalization::per_electron);
  CHECK(pe.d_psi == doctest::Approx(1.2 / std::sqrt(2.0)));
  CHECK(pe.d_n == doctest::Approx(1.25));
  const auto back = convert(pe, Normalization::natural);
  CHECK(std::abs(back.d_psi - natural.d_psi) < 1e-12);
  CHECK(std::abs(back.d_n - natural.d_n) < 1e-12);
  CHECK(back.convention == natural.convention);

  const DistanceRecord one{"a", "b", 0.5, 0.7, 0.9, {Normalization::natural, 1}};
  CHECK(convert(one, Normalization::per_electron).d_psi == one.d_psi);
  CHECK(convert(one, Normalization::unit).d_n == doctest::Approx(0.45));
}

TEST_CASE("normalization names") {
  CHECK(parse_normalization("unit_normalized") == Normalization::unit);
  CHECK(parse_normalization("per-electron") == Normalization::per_electron);
  for (auto m : {Normalization::natural, Normalization::unit, Normalization::per_electron}) {
    CHECK(parse_normalization(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_normalization("Natural"), MetricError);
}

TEST_CASE("mismatched inputs are rejected") {
  const Grid g(15.0, 41);
  const Grid h(15.0, 43);
  Rng rng(3);
  const auto a = random_state(g, rng);
  CHECK_THROWS_AS(wavefunction_distance(a, random_state(h, rng), kOne), MetricError);
  CHECK_THROWS_AS(wavefunction_distance(a, a, kTwo), MetricError);
  CHECK_THROWS_AS(density_distance(random_density(g, rng, 1), random_density(g, rng, 2), kOne), MetricError);
  CHECK_THROWS_AS(max_density_distance({Normalization::natural, 3}), MetricError);
}

TEST_CASE("slope through the origin") {
  const MetricConvention c{Normalization::natural, 1};
  std::vector<DistanceRecord> exact;
  for (int k = 1; k <= 5; ++k) exact.push_back({"a", std::to_string(k), std::nullopt, 0.1 * k, 0.15 * k, c});
  const SlopeFit f = fit_slope_through_origin(exact);
  CHECK(f.slope == doctest::Approx(1.5));
  CHECK(f.rms_residual < 1e-15);
  CHECK(f.count == 5);

  // (1, 1) and (2, 3): slope = (1 + 6) / (1 + 4)
  const std::vector<DistanceRecord> two{{"a", "b", {}, 1.0, 1.0, c}, {"a", "c", {}, 2.0, 3.0, c}};
  const SlopeFit g = fit_slope_through_origin(two);
  CHECK(g.slope == doctest::Approx(1.4));
  const double r1 = 1.0 - 1.4;
  const double r2 = 3.0 - 2.8;
  CHECK(g.rms_residual == doctest::Approx(std::sqrt((r1 * r1 + r2 * r2) / 2.0)));
  CHECK(g.max_relative_deviation == doctest::Approx(0.4 / 1.4));

  CHECK_THROWS_AS(fit_slope_through_origin(std::span(two).first(1)), MetricError);
  const std::vector<DistanceRecord> zeros{{"a", "b", {}, 0.0, 0.1, c}, {"a", "c", {}, 0.0, 0.2, c}};
  CHECK_THROWS_AS(fit_slope_through_origin(zeros), MetricError);
  std::vector<DistanceRecord> mixed = two;
  mixed[1].convention.mode = Normalization::unit;
  CHECK_THROWS_AS(fit_slope_through_origin(mixed), MetricError);
}
