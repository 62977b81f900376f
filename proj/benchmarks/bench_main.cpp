#include <benchmark/benchmark.h>

#include "qmetric/dynamics.hpp"
#include "qmetric/metrics.hpp"
#include "qmetric/solver1e.hpp"
#include "qmetric/solver2e.hpp"

using namespace qmetric;

namespace {

Potential preset(PresetFamily which, std::size_t k, std::size_t points) {
  return fourier_potential(load_preset_family(which)[k], Grid(15.0, points));
}

void BM_GroundState1e(benchmark::State& state) {
  const Potential v = preset(PresetFamily::one_electron, 0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(v).energy);
}
BENCHMARK(BM_GroundState1e)->Arg(151)->Arg(301)->Arg(601);

void BM_PairMatvec(benchmark::State& state) {
  const Potential v = preset(PresetFamily::two_electron, 0, static_cast<std::size_t>(state.range(0)));
  const PairHamiltonian h(v, 1.0);
  Eigen::VectorXd in = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(h.size()));
  Eigen::VectorXd out;
  for (auto _ : state) {
    h.apply(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(h.size()));
}
BENCHMARK(BM_PairMatvec)->Arg(101)->Arg(151);

void BM_GroundState2e(benchmark::State& state) {
  const Potential v = preset(PresetFamily::two_electron, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ground_state_interacting(v).energy);
}
BENCHMARK(BM_GroundState2e)->Arg(61)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_CrankNicolsonStep(benchmark::State& state) {
  const Potential v = preset(PresetFamily::one_electron, 2, 301);
  const CrankNicolsonStepper stepper(build_hamiltonian(perturbed_potential(v, 0.01)), 0.01);
  Eigen::VectorXcd psi = interior_of(ground_state(v).state.amplitudes);
  for (auto _ : state) {
    stepper.step(psi);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_CrankNicolsonStep);

void BM_PairDistances2e(benchmark::State& state) {
  const auto a = ground_state_noninteracting(preset(PresetFamily::two_electron, 0, 151)).state;
  const auto b = ground_state_noninteracting(preset(PresetFamily::two_electron, 1, 151)).state;
  const Density na = density_from_2e(a);
  const Density nb = density_from_2e(b);
  const MetricConvention two{Normalization::natural, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wavefunction_distance(a, b, two));
    benchmark::DoNotOptimize(density_distance(na, nb, two));
  }
}
BENCHMARK(BM_PairDistances2e);

}  // namespace

BENCHMARK_MAIN();
