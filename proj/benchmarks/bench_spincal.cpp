// Microbenchmarks for the hot paths: operator evaluation, residual kernels,
// diagonalization and one integrator step.

#include "spincal/dynamics.hpp"
#include "spincal/reduction.hpp"
#include "spincal/sampling.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace spincal;

struct Fixture {
  ModelPtr model;
  DynamicalRMatrix r;
  AlgebraElement q;
  PhasePoint point;

  explicit Fixture(const std::string& name)
      : model(make_model(CatalogDescriptor::parse(name))),
        r(DynamicalRMatrix::alekseev_meinrenken(
            model, model->algebra.descriptor().is_product() ? "cyclic"
                                                            : "identity")),
        q(AlgebraElement::Zero(model->dim())) {
    SampleRng rng(17);
    SamplerOptions opts;
    q = sample_domain_point(*model, r, rng, opts);
    point = sample_phase_point(*model, r, rng, opts, true);
  }
};

const char* kNames[] = {"sl(2)", "sl(3)", "su(3)", "sl(2)^3", "sl(4)"};

void BM_Evaluate(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(f.r.evaluate(f.q));
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 4);

void BM_Derivative(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  AlgebraElement v = AlgebraElement::Zero(f.model->dim());
  v[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(f.r.derivative(f.q, v));
}
BENCHMARK(BM_Derivative)->DenseRange(0, 4);

void BM_YangBaxterResidual(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  SampleRng rng(3);
  const AlgebraElement x = rng.gauss_vector(f.model->dim());
  const AlgebraElement y = rng.gauss_vector(f.model->dim());
  for (auto _ : state)
    benchmark::DoNotOptimize(cdybe_residual(f.r, f.q, x, y));
}
BENCHMARK(BM_YangBaxterResidual)->DenseRange(0, 4);

void BM_BracketIdentityResidual(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(prop1_residual(f.r, f.point));
}
BENCHMARK(BM_BracketIdentityResidual)->DenseRange(0, 4);

void BM_VectorField(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(vector_field(f.r, f.point));
}
BENCHMARK(BM_VectorField)->DenseRange(0, 4);

void BM_IntegrateHundredSteps(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  const IntegratorConfig cfg{1e-3, 0.1, "rk4"};
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(f.r, f.point, cfg, 2));
}
BENCHMARK(BM_IntegrateHundredSteps)->DenseRange(0, 4);

void BM_DiagonalizeToCartan(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  SampleRng rng(5);
  AlgebraElement eta = f.model->project_f(rng.gauss_vector(f.model->dim(), 0.4));
  const AlgebraElement big_q = f.model->algebra.exp_ad(eta) * f.q;
  for (auto _ : state)
    benchmark::DoNotOptimize(diagonalize_to_cartan(*f.model, big_q));
}
BENCHMARK(BM_DiagonalizeToCartan)->DenseRange(0, 4);

void BM_ExtensionEvaluate(benchmark::State& state) {
  Fixture f(kNames[state.range(0)]);
  const DynamicalRMatrix r_f = nonabelian_extend(f.r);
  SampleRng rng(7);
  AlgebraElement eta = f.model->project_f(rng.gauss_vector(f.model->dim(), 0.4));
  const AlgebraElement big_q = f.model->algebra.exp_ad(eta) * f.q;
  for (auto _ : state) benchmark::DoNotOptimize(r_f.evaluate(big_q));
}
BENCHMARK(BM_ExtensionEvaluate)->DenseRange(0, 4);

}  // namespace

BENCHMARK_MAIN();
