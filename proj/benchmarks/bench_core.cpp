#include <benchmark/benchmark.h>

#include "sk/identities.hpp"
#include "sk/solver.hpp"

using namespace sk;

namespace {

MPoly dense_poly(int vars, int terms, unsigned seed) {
    Rng rng(seed);
    MPoly p;
    for (int t = 0; t < terms; ++t) {
        Monomial mono;
        for (int v = 1; v <= vars; ++v) {
            int e = rng.int_in(0, 3);
            if (e) mono.emplace_back(VarId{1, v}, e);
        }
        p.add_term(std::move(mono), rng.nonzero_rational());
    }
    return p;
}

void bm_poly_mul(benchmark::State& state) {
    MPoly a = dense_poly(static_cast<int>(state.range(0)), 40, 1);
    MPoly b = dense_poly(static_cast<int>(state.range(0)), 40, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_poly_mul)->Arg(3)->Arg(5);

void bm_scalar_curvature(benchmark::State& state) {
    auto fs = FactorizationStructure::product_sv(Partition{{2, 3}});
    HTensor beta;
    beta.coeffs[MultiDeg{0, 0}] = 1;
    beta.coeffs[MultiDeg{1, 0}] = 2;
    std::map<VarId, UniRational> prof;
    for (const auto& v : fs.partition().all_vars()) {
        prof.emplace(v, UniRational::polynomial(v, UniPoly({1, 0, 1, Rational(v.slot)})));
    }
    auto g = make_geometry(fs, beta, prof);
    for (auto _ : state) benchmark::DoNotOptimize(scalar_curvature(g));
}
BENCHMARK(bm_scalar_curvature);

void bm_extremality(benchmark::State& state) {
    auto fs = FactorizationStructure::veronese(3);
    HTensor beta;
    beta.coeffs[MultiDeg{0}] = 1;
    beta.coeffs[MultiDeg{2}] = 1;
    auto fam = solve_veronese(fs, beta).at(0);
    Rng rng(7);
    auto values = fam.draw(rng);
    auto g = make_geometry(fs, beta, fam.instantiate(values), true);
    for (auto _ : state) benchmark::DoNotOptimize(extremality_residual(g));
}
BENCHMARK(bm_extremality);

void bm_vandermonde_row(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        for (int r = 1; r <= m; ++r) {
            benchmark::DoNotOptimize(verify_identity("vandermonde", {{"m", m}, {"r", r}, {"s", r}}));
        }
    }
}
BENCHMARK(bm_vandermonde_row)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
