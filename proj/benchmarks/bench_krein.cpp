#include <benchmark/benchmark.h>

#include <random>

#include "krein/realize.hpp"

namespace {

using namespace krein;

std::mt19937_64 rng(12345);

double uni() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

template <class T>
T rand_scalar() {
  if constexpr (FieldTraits<T>::is_quaternion)
    return Quaternion{uni(), uni(), uni(), uni()};
  else
    return Complex(uni(), uni());
}

template <class T>
Matrix<T> rand_matrix(std::size_t n) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rand_scalar<T>();
  return m;
}

template <class T>
OperatorSeries<T> rand_series(std::size_t d, std::size_t degree) {
  std::vector<Matrix<T>> c;
  for (std::size_t k = 0; k <= degree; ++k) c.push_back(rand_matrix<T>(d));
  return OperatorSeries<T>(std::move(c), 0.8);
}

void BM_HermEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix h = hermitian_part(rand_matrix<Complex>(n));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermEig)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNCubed);

void BM_QuatHermEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QMatrix h = hermitian_part(rand_matrix<Quaternion>(n));
  for (auto _ : state) benchmark::DoNotOptimize(quat_herm_eig(h));
}
BENCHMARK(BM_QuatHermEig)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

void BM_BuildFormMatrix(benchmark::State& state) {
  const GramSpec<Complex> spec(rand_series<Complex>(2, 3), 0.5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_form_matrix(spec));
}
BENCHMARK(BM_BuildFormMatrix)->Arg(32)->Arg(64)->Arg(128);

void BM_FormContour(benchmark::State& state) {
  const std::size_t n = 64;
  const GramSpec<Complex> spec(rand_series<Complex>(2, 8), 0.5, n);
  std::vector<Complex> a(2 * n), b(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const double w = std::pow(0.5, static_cast<double>(i / 2 + 1));
    a[i] = rand_scalar<Complex>() * w;
    b[i] = rand_scalar<Complex>() * w;
  }
  const CoeffVector<Complex> f(n, 2, a), g(n, 2, b);
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(form_contour(f, g, spec, nodes));
}
BENCHMARK(BM_FormContour)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

template <class T>
void BM_Pipeline(benchmark::State& state) {
  const auto phi = rand_series<T>(1, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const GramSpec<T> spec(phi, 0.5, n);
    const auto op = build_form_matrix(spec);
    const auto basis = spectral_split(op.P);
    const auto model = build_model_space(basis, spec);
    const auto real = build_realization(model, basis, spec);
    benchmark::DoNotOptimize(moment_check(real, phi, 6));
  }
}
BENCHMARK(BM_Pipeline<Complex>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pipeline<Quaternion>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
