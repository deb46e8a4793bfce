#include "ptfhard/hermite.hpp"
#include "ptfhard/label_cover.hpp"
#include "ptfhard/polynomial.hpp"
#include "ptfhard/reduction.hpp"
#include "ptfhard/rng.hpp"

#include <benchmark/benchmark.h>

using namespace ptfhard;

namespace {

PolyD random_dense_poly(int n_vars, int n_terms, int max_degree, Rng& rng) {
    PolyD p;
    for (int t = 0; t < n_terms; ++t) {
        Monomial m;
        const int deg = static_cast<int>(rng.uniform_int(max_degree + 1));
        for (int e = 0; e < deg; ++e)
            m = m.times(VarId::abstract(0, static_cast<int>(rng.uniform_int(n_vars))));
        p.add_term(m, rng.uniform(-1.0, 1.0));
    }
    return p;
}

void bm_poly_multiply(benchmark::State& state) {
    Rng rng(1, 0);
    const PolyD a = random_dense_poly(static_cast<int>(state.range(0)), 40, 3, rng);
    const PolyD b = random_dense_poly(static_cast<int>(state.range(0)), 40, 3, rng);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_poly_multiply)->Arg(4)->Arg(8)->Arg(16);

void bm_to_hermite(benchmark::State& state) {
    Rng rng(2, 0);
    std::set<VarId> gaussians;
    for (int i = 0; i < 4; ++i) gaussians.insert(VarId::abstract(0, i));
    const PolyD p = random_dense_poly(4, static_cast<int>(state.range(0)), 4, rng);
    for (auto _ : state) benchmark::DoNotOptimize(to_hermite(p, gaussians));
}
BENCHMARK(bm_to_hermite)->Arg(20)->Arg(80);

void bm_sample_points(benchmark::State& state) {
    Rng gen(3, 0);
    const auto pl = generate_yes_instance(30, 4, 6, 4, gen);
    TestParams params = TestParams::make(1, 0.1, 6);
    params.eta_override = 1e-3;
    const bool fold = state.range(0) != 0;
    EmitOptions opts;
    opts.seed = 4;
    opts.n_points = 2000;
    opts.fold = fold;
    opts.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(emit_instance(pl.instance, params, opts));
    state.SetItemsProcessed(state.iterations() * opts.n_points);
}
BENCHMARK(bm_sample_points)->Arg(0)->Arg(1);

} // namespace

BENCHMARK_MAIN();
