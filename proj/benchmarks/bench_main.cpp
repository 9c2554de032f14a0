// Microbenchmarks for the hot paths: spectral differentiation, wedge
// products, the string-form pipeline and the holonomy integrator. Sample
// data is drawn once outside the timed region.

#include <benchmark/benchmark.h>

#include "caloron/gauge.hpp"
#include "caloron/holonomy.hpp"
#include "caloron/invariants.hpp"
#include "caloron/loop.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"

using namespace caloron;

namespace {

const GroupSpec u2{GroupFamily::UnitaryU, 2};

TrigFieldOptions bench_opt() {
    TrigFieldOptions opt;
    opt.base_bandwidth = 2;
    opt.theta_bandwidth = 3;
    opt.scale = 0.5;
    return opt;
}

void bm_exterior_derivative(benchmark::State& state) {
    CounterRng rng(9001);
    const Mesh t2 = make_torus_mesh({static_cast<int>(state.range(0)),
                                     static_cast<int>(state.range(0))});
    const MatrixForm w = random_skew_form(rng, t2, 1, 2, 32, bench_opt());
    for (auto _ : state) benchmark::DoNotOptimize(exterior_derivative(w));
}
BENCHMARK(bm_exterior_derivative)->Arg(16)->Arg(32)->Arg(64);

void bm_wedge(benchmark::State& state) {
    CounterRng rng(9002);
    const Mesh t2 = make_torus_mesh({static_cast<int>(state.range(0)),
                                     static_cast<int>(state.range(0))});
    const MatrixForm a = random_skew_form(rng, t2, 1, 2, 32, bench_opt());
    const MatrixForm b = random_skew_form(rng, t2, 1, 2, 32, bench_opt());
    for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(bm_wedge)->Arg(16)->Arg(32)->Arg(64);

void bm_string_form_k2(benchmark::State& state) {
    CounterRng rng(9003);
    TrigFieldOptions opt;
    opt.terms = 2;
    opt.base_bandwidth = 1;
    opt.theta_bandwidth = 2;
    opt.scale = 0.45;
    const Mesh t3 = make_torus_mesh({16, 16, 16});
    const GaugePair p = random_gauge_pair(rng, u2, t3, 32, opt);
    const SymTrace f2{2};
    for (auto _ : state) benchmark::DoNotOptimize(string_form(f2, p));
}
BENCHMARK(bm_string_form_k2);

void bm_caloron_transform(benchmark::State& state) {
    CounterRng rng(9004);
    const Mesh t2 = make_torus_mesh({32, 32});
    const GaugePair p = random_gauge_pair(rng, u2, t2, 64, bench_opt());
    for (auto _ : state) benchmark::DoNotOptimize(caloron_transform(p));
}
BENCHMARK(bm_caloron_transform);

void bm_holonomy(benchmark::State& state) {
    CounterRng rng(9005);
    TrigFieldOptions opt;
    opt.terms = 2;
    opt.base_bandwidth = 1;
    opt.theta_bandwidth = 2;
    opt.scale = 0.4;
    const Mesh t2 = make_torus_mesh({16, 16});
    const MatrixForm phi = random_skew_form(rng, t2, 0, 2, 64, opt);
    HolonomyOptions hopt;
    hopt.steps = static_cast<int>(state.range(0));
    hopt.richardson_tol = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(higgs_holonomy(phi, u2, hopt));
}
BENCHMARK(bm_holonomy)->Arg(256)->Arg(512);

void bm_winding(benchmark::State& state) {
    CounterRng rng(9006);
    const WindingLoop wl = random_winding_loop(rng, u2, 1024, 8, 2);
    for (auto _ : state) benchmark::DoNotOptimize(winding_number(wl.loop));
}
BENCHMARK(bm_winding);

} // namespace

BENCHMARK_MAIN();
