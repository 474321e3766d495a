#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qhtk/bounds.hpp"
#include "qhtk/geometry.hpp"
#include "qhtk/qmatrix.hpp"
#include "qhtk/rng.hpp"
#include "qhtk/volume.hpp"

using namespace qhtk;

namespace {

QMatrix fixed_matrix(int m, std::uint64_t seed) {
    Rng rng(seed);
    QMatrix a(m, m);
    for (Quaternion& q : a.entries) q = rng.gaussian_quaternion();
    return a;
}

void bm_adjoint_embed(benchmark::State& state) {
    const QMatrix a = fixed_matrix(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(adjoint_embed(a));
}
BENCHMARK(bm_adjoint_embed)->Arg(3)->Arg(6);

void bm_spectral_norm(benchmark::State& state) {
    const QMatrix a = fixed_matrix(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(a));
}
BENCHMARK(bm_spectral_norm)->Arg(3)->Arg(6);

void bm_hermitian_eigs(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const QMatrix a = fixed_matrix(m, 3);
    const ComplexMatrix h = [&] {
        ComplexMatrix e = adjoint_embed(a);
        ComplexMatrix sym(e.rows, e.cols);
        for (int i = 0; i < e.rows; ++i)
            for (int j = 0; j < e.cols; ++j) sym.at(i, j) = 0.5 * (e.at(i, j) + std::conj(e.at(j, i)));
        return sym;
    }();
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigs(h));
}
BENCHMARK(bm_hermitian_eigs)->Arg(6)->Arg(12);

void bm_matrix_power(benchmark::State& state) {
    const Isometry k = random_stabilizer(2, 4);
    const long long q = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_power(k.matrix, q));
}
BENCHMARK(bm_matrix_power)->Arg(81)->Arg(6561);

void bm_classify_isometry(benchmark::State& state) {
    const Isometry a = random_isometry(2, 5, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(classify_isometry(a));
}
BENCHMARK(bm_classify_isometry);

void bm_dirichlet(benchmark::State& state) {
    Rng rng(6);
    std::vector<double> thetas(3);
    for (double& t : thetas) t = rng.uniform();
    for (auto _ : state) benchmark::DoNotOptimize(dirichlet_approximate(thetas, 9));
}
BENCHMARK(bm_dirichlet);

void bm_approximate_rotation(benchmark::State& state) {
    const Isometry k = random_stabilizer(2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(approximate_rotation(k, 9));
}
BENCHMARK(bm_approximate_rotation);

void bm_certify_displacement(benchmark::State& state) {
    const double lam = solve_constants(2).lambda_n;
    const Isometry a = random_isometry(2, 8, 0.5 * lam);
    for (auto _ : state) benchmark::DoNotOptimize(certify_displacement(a, 9));
}
BENCHMARK(bm_certify_displacement);

void bm_ball_volume(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ball_volume(3, 2.0));
}
BENCHMARK(bm_ball_volume);

void bm_integrate_density(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(integrate_density(3, 2.0));
}
BENCHMARK(bm_integrate_density);

} // namespace

BENCHMARK_MAIN();
