#include <cmath>

#include <benchmark/benchmark.h>

#include "casimir/dipole.hpp"
#include "casimir/oracle.hpp"
#include "casimir/thermo.hpp"
#include "casimir/verify.hpp"

namespace {

using casimir::ModelKind;

void BM_InteractionFreeEnergy_tm3(benchmark::State& state) {
  const auto model = casimir::validate_stability(casimir::verify::three_oscillator(ModelKind::tm3, 0.3));
  const double t = std::pow(10.0, double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(casimir::interaction_free_energy(model, t));
}
BENCHMARK(BM_InteractionFreeEnergy_tm3)->DenseRange(-3, 2);

void BM_InteractionFreeEnergy_te_bath(benchmark::State& state) {
  const auto model = casimir::validate_stability(
      casimir::verify::standard_bath(ModelKind::te_bath, int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(casimir::interaction_free_energy(model, 0.1));
}
BENCHMARK(BM_InteractionFreeEnergy_te_bath)->Arg(2)->Arg(6)->Arg(32)->Arg(128);

void BM_ThermoPoint(benchmark::State& state) {
  const auto model = casimir::validate_stability(casimir::verify::three_oscillator(ModelKind::te3, 0.3));
  auto f = [&](double t) { return casimir::interaction_free_energy(model, t); };
  for (auto _ : state) benchmark::DoNotOptimize(casimir::evaluate_point(f, 1.0));
}
BENCHMARK(BM_ThermoPoint);

void BM_ModeSpectrum(benchmark::State& state) {
  const auto spec = casimir::verify::standard_bath(ModelKind::te_bath, int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(casimir::mode_spectrum(spec));
}
BENCHMARK(BM_ModeSpectrum)->Arg(6)->Arg(64);

void BM_MomentOracle(benchmark::State& state) {
  const auto model = casimir::validate_stability(casimir::verify::standard_bath(ModelKind::te_bath, 6));
  for (auto _ : state) benchmark::DoNotOptimize(casimir::oracle_interaction_free_energy(model, 50.0));
}
BENCHMARK(BM_MomentOracle);

void BM_DipolePairFreeEnergy(benchmark::State& state) {
  const casimir::DipolePair pair{1.0, 1.0, 1.0, 1.0, double(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(casimir::pair_free_energy(pair, 1e-4));
}
BENCHMARK(BM_DipolePairFreeEnergy)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
