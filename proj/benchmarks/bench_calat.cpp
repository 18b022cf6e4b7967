#include <benchmark/benchmark.h>

#include "calat/calat.hpp"

using namespace calat;

namespace {

template <class S>
LatticeWindow<S> saddle_window(int extent) {
  CoefficientSet<S> s = example_coefficients<S>(ExampleName::example1);
  return synthesize(s, -extent, extent, -extent, extent);
}

template <class S>
void BM_Det3(benchmark::State& state) {
  using T = scalar_traits<S>;
  Point3<S> a{T::from_fraction(1, 3), T::from_int(2), T::from_int(-5)};
  Point3<S> b{T::from_int(4), T::from_fraction(-7, 2), T::from_int(1)};
  Point3<S> c{T::from_int(0), T::from_int(3), T::from_fraction(9, 4)};
  for (auto _ : state) {
    S d = det3(a, b, c);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_Det3<double>);
BENCHMARK(BM_Det3<Rational>);

template <class S>
void BM_Synthesize(benchmark::State& state) {
  CoefficientSet<S> s = example_coefficients<S>(ExampleName::example1);
  int extent = static_cast<int>(state.range(0));
  for (auto _ : state) {
    LatticeWindow<S> w = synthesize(s, -extent, extent, -extent, extent);
    benchmark::DoNotOptimize(w.at(extent, extent));
  }
}
BENCHMARK(BM_Synthesize<double>)->Arg(4)->Arg(8);
BENCHMARK(BM_Synthesize<Rational>)->Arg(4)->Arg(8);

template <class S>
void BM_ExtractField(benchmark::State& state) {
  LatticeWindow<S> w = saddle_window<S>(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ExtractionResult<S> out = extract_field(w);
    benchmark::DoNotOptimize(out.field.at(0, 0));
  }
}
BENCHMARK(BM_ExtractField<double>)->Arg(4)->Arg(8);
BENCHMARK(BM_ExtractField<Rational>)->Arg(4)->Arg(8);

template <class S>
void BM_Analyze(benchmark::State& state) {
  LatticeWindow<S> w = saddle_window<S>(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    AnalysisReport<S> report = analyze_window(w);
    benchmark::DoNotOptimize(report.sites.size());
  }
}
BENCHMARK(BM_Analyze<double>)->Arg(4);
BENCHMARK(BM_Analyze<Rational>)->Arg(4);

void BM_ScalarResiduals(benchmark::State& state) {
  CoefficientField<Rational> f = CoefficientField<Rational>::constant(
      example_coefficients<Rational>(ExampleName::example2), 0, 2, 0, 2);
  for (auto _ : state) {
    CompatResiduals<Rational> r = scalar_residuals(f, 0, 0);
    benchmark::DoNotOptimize(r.k_value);
  }
}
BENCHMARK(BM_ScalarResiduals);

} // namespace

BENCHMARK_MAIN();
