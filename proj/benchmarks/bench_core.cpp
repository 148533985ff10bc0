// Microbenchmarks for the hot paths: matrix exponentials, Kronecker-factored
// operator application, per-mode solves, and metric application.

#include <benchmark/benchmark.h>

#include "ncpb/linalg.hpp"
#include "ncpb/model.hpp"
#include "ncpb/operators.hpp"
#include "ncpb/rng.hpp"

using namespace ncpb;

namespace {

ModelParams generic_params() {
    ModelParams p;
    p.theta = 0.3;
    p.alpha1 = 0.5;
    p.alpha2 = 0.2;
    p.alpha3 = 0.1;
    p.alpha4 = -0.1;
    return p;
}

Mat ladder_arg(int n) {
    auto [lower, upper] = mode_ladder(n);
    return 0.4 * upper + 0.3 * lower;
}

Vec random_vec(Eigen::Index n, std::uint64_t seed) {
    DetRng rng(seed);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.cnormal();
    return v / v.norm();
}

void bm_matexp(benchmark::State& state) {
    const int n = int(state.range(0));
    const Mat A = ladder_arg(n);
    for (auto _ : state) benchmark::DoNotOptimize(matexp(A));
}
BENCHMARK(bm_matexp)->Arg(32)->Arg(64);

void bm_kron(benchmark::State& state) {
    const int n = int(state.range(0));
    const Mat A = ladder_arg(n);
    const Mat B = ladder_arg(n).transpose().eval();
    for (auto _ : state) benchmark::DoNotOptimize(kron(A, B));
}
BENCHMARK(bm_kron)->Arg(32);

void bm_operator_apply(benchmark::State& state) {
    const TruncationSpec t{32, 32, 8};
    const ModelParams p = generic_params();
    const DerivedConstants d = derive_constants(p);
    const FockOperator H = build_H_canonical(p, d, t);
    const Vec v = random_vec(t.size(), 17);
    for (auto _ : state) benchmark::DoNotOptimize(H.apply(v));
}
BENCHMARK(bm_operator_apply);

void bm_mode_solve(benchmark::State& state) {
    const TruncationSpec t{32, 32, 8};
    const ModelParams p = generic_params();
    const DerivedConstants d = derive_constants(p);
    const FockOperator V = build_V(d.nu(), d.mu(), t);
    const Vec v = random_vec(t.size(), 19);
    for (auto _ : state) benchmark::DoNotOptimize(V.apply_inverse(v));
}
BENCHMARK(bm_mode_solve);

void bm_build_hamiltonian(benchmark::State& state) {
    const TruncationSpec t{32, 32, 8};
    const ModelParams p = generic_params();
    const DerivedConstants d = derive_constants(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_H_canonical(p, d, t));
}
BENCHMARK(bm_build_hamiltonian);

void bm_theta_apply(benchmark::State& state) {
    const TruncationSpec t{32, 32, 8};
    const ModelParams p = generic_params();
    const DerivedConstants d = derive_constants(p);
    const FockOperator Theta = build_Theta(d.nu(), d.mu(), t);
    const Vec v = random_vec(t.size(), 23);
    for (auto _ : state) benchmark::DoNotOptimize(Theta.apply(v));
}
BENCHMARK(bm_theta_apply);

} // namespace

BENCHMARK_MAIN();
