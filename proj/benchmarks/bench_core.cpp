#include <benchmark/benchmark.h>

#include "fibergate/fidelity.hpp"
#include "fibergate/pauli.hpp"
#include "fibergate/report.hpp"

using namespace fibergate;

namespace {

NodeLayout many_body_layout(int n_atoms) {
  NodeLayout layout;
  layout.cavities = {CavitySpec{2.5, 0.1, 0.1}};
  for (int i = 0; i < n_atoms; ++i)
    layout.atoms.push_back({AtomSpec{7.8, 0.0, 2.6}, 0});
  return layout;
}

void BM_OverlapMatrix(benchmark::State& state) {
  const NodeLayout layout = many_body_layout(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_g_matrix(layout, 0, 0.0, Flavor::post_selected));
  }
}
BENCHMARK(BM_OverlapMatrix)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_ChoiFidelity(benchmark::State& state) {
  const NodeLayout layout = many_body_layout(static_cast<int>(state.range(0)));
  const SchurChannel ch = local_channel(layout, 0.0, Flavor::post_selected);
  const Eigen::VectorXcd u = ideal_phase_diagonal(GateKind::local, layout);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        average_fidelity(entanglement_fidelity(ch, u), layout.dim()));
  }
}
BENCHMARK(BM_ChoiFidelity)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_PauliRates(benchmark::State& state) {
  const NodeLayout layout = many_body_layout(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pauli_channel(layout, 0.0, GateKind::local, Flavor::post_selected));
  }
}
BENCHMARK(BM_PauliRates)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_SolveMode(benchmark::State& state) {
  const FiberSpec fiber;
  for (auto _ : state) benchmark::DoNotOptimize(solve_mode(fiber));
}
BENCHMARK(BM_SolveMode);

void BM_CouplingModelBuild(benchmark::State& state) {
  const FiberSpec fiber;
  for (auto _ : state) benchmark::DoNotOptimize(CouplingModel(fiber));
}
BENCHMARK(BM_CouplingModelBuild);

void BM_CouplingQuery(benchmark::State& state) {
  const CouplingModel model{FiberSpec{}};
  double r = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.g_linear_parallel(r));
    r = r < 1.5 ? r + 1e-4 : 0.25;
  }
}
BENCHMARK(BM_CouplingQuery);

void BM_SweepPoint(benchmark::State& state) {
  Scenario sc;
  sc.cavity = {2.5, 0.1, 0.1};
  sc.total_atoms = static_cast<int>(state.range(0));
  sc.targets.g = 10.8;
  sc.nontargets.g = 7.8;
  sc.residual.enabled = true;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_gate(sc));
}
BENCHMARK(BM_SweepPoint)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
