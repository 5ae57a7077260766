#include <benchmark/benchmark.h>

#include "isolab/bch.hpp"
#include "isolab/isocrystal.hpp"
#include "isolab/perfected_series.hpp"

namespace isolab {
namespace {

void BM_PadicMultiply(benchmark::State& state) {
  const auto spec = FieldSpec::make(5, static_cast<int>(state.range(0)), 40);
  PadicScalar a = PadicScalar::generator(spec) + PadicScalar::from_rational(spec, Rational(2, 3));
  const PadicScalar b = PadicScalar::generator(spec).sigma() + PadicScalar::one(spec);
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_PadicMultiply)->Arg(1)->Arg(2)->Arg(4);

void BM_NewtonSlopes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = FieldSpec::make(3, 2, 40);
  // Cyclic shift with one entry 1/p: a single isoclinic block of slope -1/n.
  Matrix f(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    f((i + 1) % n, i) = i + 1 == n ? PadicScalar::from_rational(spec, Rational(1, 3))
                                   : PadicScalar::one(spec);
  }
  const Isocrystal m(f);
  for (auto _ : state) benchmark::DoNotOptimize(newton_slopes(m));
}
BENCHMARK(BM_NewtonSlopes)->DenseRange(2, 8, 2);

void BM_SlopeSplit(benchmark::State& state) {
  const auto spec = FieldSpec::make(5, 1, 40);
  std::vector<Rational> diag;
  for (int i = 0; i < state.range(0); ++i) diag.emplace_back(1, i % 2 == 0 ? 1 : 5);
  const Isocrystal m = Isocrystal::diagonal(spec, diag).change_basis(
      Matrix::identity(spec, diag.size()) + Matrix::from_rationals(spec, [&] {
        std::vector<std::vector<Rational>> rows(diag.size(), std::vector<Rational>(diag.size(), 0));
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) rows[i][i + 1] = 1;
        return rows;
      }()));
  for (auto _ : state) benchmark::DoNotOptimize(slope_split(m));
}
BENCHMARK(BM_SlopeSplit)->DenseRange(2, 6, 2);

void BM_BchSeries(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bch_series_dynkin(c));
}
BENCHMARK(BM_BchSeries)->DenseRange(2, 6, 1);

void BM_SeriesCompose(benchmark::State& state) {
  const auto k = FiniteField::make(3, 2);
  const Rational bound = static_cast<long>(state.range(0));
  PerfectedSeries f(k, 2, bound);
  for (int i = 1; i <= 4; ++i) f.add_term({i, 4 - i}, k->one());
  PerfectedSeries g(k, 1, bound);
  g.add_term({Rational(1, 3)}, k->one());
  g.add_term({1}, {1, 1});
  PerfectedSeries h(k, 1, bound);
  h.add_term({Rational(2, 9)}, k->one());
  for (auto _ : state) benchmark::DoNotOptimize(ps_compose(f, {g}, {h}));
}
BENCHMARK(BM_SeriesCompose)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
}  // namespace isolab

BENCHMARK_MAIN();
