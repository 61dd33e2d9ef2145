// OpenMP kernels against the serial reference, plus whole right-hand-side
// and step timings. OMP_NUM_THREADS controls the parallel lanes.

#include <benchmark/benchmark.h>

#include <random>

#include "hmhd/experiments.hpp"
#include "hmhd/kernels.hpp"
#include "hmhd/timestepper.hpp"

using namespace hmhd;
namespace k = hmhd::kernels;

namespace {

std::vector<cplx> random_cplx(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> out(n);
    for (auto& c : out) c = cplx(normal(rng), normal(rng));
    return out;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& x : out) x = normal(rng);
    return out;
}

std::size_t cube(int n) { return std::size_t(n) * n * n; }

}  // namespace

static void BM_multiplier_omp(benchmark::State& state) {
    const std::size_t n = cube(int(state.range(0)));
    auto y = random_cplx(n, 1);
    auto m = random_real(n, 2);
    for (auto _ : state) {
        k::apply_multiplier(y, m);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_multiplier_omp)->Arg(32)->Arg(64);

static void BM_multiplier_serial(benchmark::State& state) {
    const std::size_t n = cube(int(state.range(0)));
    auto y = random_cplx(n, 1);
    auto m = random_real(n, 2);
    for (auto _ : state) {
        k::ref::apply_multiplier(y, m);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_multiplier_serial)->Arg(32)->Arg(64);

static void BM_cross_omp(benchmark::State& state) {
    const std::size_t n = cube(int(state.range(0)));
    auto ax = random_real(n, 1), ay = random_real(n, 2), az = random_real(n, 3);
    auto bx = random_real(n, 4), by = random_real(n, 5), bz = random_real(n, 6);
    std::vector<double> ox(n), oy(n), oz(n);
    for (auto _ : state) {
        k::cross_pointwise(ax, ay, az, bx, by, bz, ox, oy, oz);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_cross_omp)->Arg(32)->Arg(64);

static void BM_cross_serial(benchmark::State& state) {
    const std::size_t n = cube(int(state.range(0)));
    auto ax = random_real(n, 1), ay = random_real(n, 2), az = random_real(n, 3);
    auto bx = random_real(n, 4), by = random_real(n, 5), bz = random_real(n, 6);
    std::vector<double> ox(n), oy(n), oz(n);
    for (auto _ : state) {
        k::ref::cross_pointwise(ax, ay, az, bx, by, bz, ox, oy, oz);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_cross_serial)->Arg(32)->Arg(64);

static void BM_weighted_sum_omp(benchmark::State& state) {
    const std::size_t n = cube(int(state.range(0)));
    auto c = random_cplx(n, 1);
    auto w = random_real(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(k::weighted_abs2_sum(c, w));
}
BENCHMARK(BM_weighted_sum_omp)->Arg(32)->Arg(64);

static void BM_weighted_sum_serial(benchmark::State& state) {
    const std::size_t n = cube(int(state.range(0)));
    auto c = random_cplx(n, 1);
    auto w = random_real(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(k::ref::weighted_abs2_sum(c, w));
}
BENCHMARK(BM_weighted_sum_serial)->Arg(32)->Arg(64);

static void BM_curl_omp(benchmark::State& state) {
    const int n = int(state.range(0));
    const std::size_t sz = cube(n);
    auto vx = random_cplx(sz, 1), vy = random_cplx(sz, 2), vz = random_cplx(sz, 3);
    std::vector<cplx> ox(sz), oy(sz), oz(sz);
    for (auto _ : state) {
        k::curl_modes(n, vx, vy, vz, ox, oy, oz);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_curl_omp)->Arg(32)->Arg(64);

static void BM_curl_serial(benchmark::State& state) {
    const int n = int(state.range(0));
    const std::size_t sz = cube(n);
    auto vx = random_cplx(sz, 1), vy = random_cplx(sz, 2), vz = random_cplx(sz, 3);
    std::vector<cplx> ox(sz), oy(sz), oz(sz);
    for (auto _ : state) {
        k::ref::curl_modes(n, vx, vy, vz, ox, oy, oz);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_curl_serial)->Arg(32)->Arg(64);

static void BM_full_rhs(benchmark::State& state) {
    GridPtr g = Grid::make(int(state.range(0)));
    State s = make_initial("random_band_limited", 1.0, 1, g);
    PhysParams p;
    for (auto _ : state) {
        Rhs rhs = nonlinear_rhs(s, p, EvolveMode::full);
        benchmark::DoNotOptimize(rhs.du.x.coeffs().data());
    }
}
BENCHMARK(BM_full_rhs)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_step(benchmark::State& state) {
    GridPtr g = Grid::make(int(state.range(0)));
    State s = make_initial("random_band_limited", 1.0, 1, g);
    PhysParams p;
    Stepper st(g, p);
    for (auto _ : state) {
        s = st.step(s, 1e-4);
        benchmark::DoNotOptimize(s.u.x.coeffs().data());
    }
}
BENCHMARK(BM_step)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
