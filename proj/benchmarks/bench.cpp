#include "rydion/crystal.hpp"
#include "rydion/internal_hamiltonian.hpp"
#include "rydion/radial.hpp"
#include "rydion/spin_model.hpp"
#include "rydion/tracking.hpp"
#include "rydion/units.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace rydion;

namespace {

const SpeciesParams& ca() {
  static const SpeciesParams sp = load_species(RYDION_BENCH_DATA_DIR "/ca40.species", 5);
  return sp;
}

void BM_RadialSolve(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_bound_state(ca(), n, 1, 1.5).energy);
}
BENCHMARK(BM_RadialSolve)->Arg(30)->Arg(45)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_RadialSet126(benchmark::State& st) {
  const BasisSet basis = build_basis(45, ca(), 5);
  for (auto _ : st) {
    RadialSet r(ca(), basis.radial_keys(), {}, static_cast<int>(st.range(0)));
    benchmark::DoNotOptimize(r.energy(basis.radial_keys().front()));
  }
}
BENCHMARK(BM_RadialSet126)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& st) {
  const BasisSet basis = build_basis(45, ca(), 5);
  const RadialSet radial(ca(), basis.radial_keys());
  std::vector<double> grid;
  for (int i = 0; i < st.range(0); ++i) grid.push_back(2.0 * i / (st.range(0) - 1));
  for (auto _ : st) benchmark::DoNotOptimize(sweep_and_track(basis, radial, grid).refinements);
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Sweep)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Crystal(benchmark::State& st) {
  const double wr = 2 * std::numbers::pi * 220e3;
  const CrystalConfig cfg{static_cast<int>(st.range(0)), 40 * si::amu, wr, wr, 3 * wr, true};
  for (auto _ : st) benchmark::DoNotOptimize(solve_equilibrium(cfg).energy);
}
BENCHMARK(BM_Crystal)->Arg(3)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_SpinED(benchmark::State& st) {
  const auto p = SpinModelParams::uniform(static_cast<int>(st.range(0)), 0.3, 1.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(diagonalize(p).energies(0));
}
BENCHMARK(BM_SpinED)->Arg(3)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
