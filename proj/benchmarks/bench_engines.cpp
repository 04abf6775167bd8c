#include <benchmark/benchmark.h>

#include "pathsim/distribution.hpp"
#include "pathsim/expectation.hpp"
#include "pathsim/oracle.hpp"

using namespace pathsim;

namespace {

CircuitIR rotation_circuit(int n, int depth) {
  CircuitIR c = gen_brickwork(n, depth, BlockKind::Rotation, 42);
  c.policy = {NoisePolicy::Kind::Depol1, 0.1};
  return c;
}

CircuitIR haar_circuit(int n, int depth) {
  CircuitIR c = gen_brickwork(n, depth, BlockKind::Haar, 42);
  c.policy = {NoisePolicy::Kind::Depol2, 0.1};
  return c;
}

}  // namespace

static void BM_TableauConjugate(benchmark::State& state) {
  int n = int(state.range(0));
  RngStream rng(1);
  CircuitIR c = rotation_circuit(n, 4);
  const CliffordTableau* t = nullptr;
  for (const Layer& l : c.layers)
    if (auto* cl = std::get_if<CliffordLayer>(&l)) t = &cl->tableau;
  PauliString p = PauliString::pauli_z(n, 0);
  for (auto _ : state) {
    p = t->conjugate(p);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_TableauConjugate)->Arg(8)->Arg(32)->Arg(128);

static void BM_BuildSeries(benchmark::State& state) {
  int L = int(state.range(0));
  CircuitIR c = rotation_circuit(8, 6);
  Observable obs = Observable::parse("XYZXYZXY", 8);
  for (auto _ : state) {
    ExpectationSeries s = build_series(c, obs, L);
    benchmark::DoNotOptimize(s.paths().size());
  }
  state.SetComplexityN(1 << L);
}
BENCHMARK(BM_BuildSeries)->DenseRange(2, 10, 2);

static void BM_EvaluateSeries(benchmark::State& state) {
  CircuitIR c = haar_circuit(8, 4);
  Observable obs = Observable::parse("ZIIIIIII", 8);
  ExpectationSeries s = build_series(c, obs, int(state.range(0)));
  RngStream rng(7);
  ParamPoint pt = sample_params(c, rng);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_expectation(s, pt));
  state.counters["paths"] = double(s.paths().size());
}
BENCHMARK(BM_EvaluateSeries)->DenseRange(1, 4, 1);

static void BM_BuildDistribution(benchmark::State& state) {
  CircuitIR c = haar_circuit(4, 4);
  for (auto _ : state) {
    TruncatedDistribution d = build_distribution(c, int(state.range(0)));
    benchmark::DoNotOptimize(d.blocks().size());
  }
}
BENCHMARK(BM_BuildDistribution)->Arg(1)->Arg(2)->Arg(3);

static void BM_ProbVector(benchmark::State& state) {
  CircuitIR c = haar_circuit(4, 4);
  TruncatedDistribution d = build_distribution(c, int(state.range(0)));
  RngStream rng(7);
  ParamPoint pt = sample_params(c, rng);
  for (auto _ : state) benchmark::DoNotOptimize(prob_vector(d, pt));
}
BENCHMARK(BM_ProbVector)->Arg(1)->Arg(2)->Arg(3);

static void BM_ExactDensityOracle(benchmark::State& state) {
  int n = int(state.range(0));
  CircuitIR c = haar_circuit(n, 2);
  RngStream rng(7);
  ParamPoint pt = sample_params(c, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_distribution(c, pt, true));
}
BENCHMARK(BM_ExactDensityOracle)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
