#include <benchmark/benchmark.h>

#include "spikes/bp_torus.hpp"
#include "spikes/certificate.hpp"
#include "spikes/l1_lp.hpp"
#include "spikes/linalg.hpp"
#include "spikes/rng.hpp"
#include "spikes/sparsify.hpp"
#include "spikes/toeplitz.hpp"
#include "spikes/two_spike.hpp"

using namespace spikes;

namespace {

Mat random_sym(SplitMix64& rng, std::size_t n) {
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = rng.uniform(-1.0, 1.0);
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

}  // namespace

static void BM_JacobiEig(benchmark::State& state) {
    SplitMix64 rng(1);
    const Mat a = random_sym(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const SymEig e = jacobi_eig(a);
        benchmark::DoNotOptimize(e.values);
    }
}
BENCHMARK(BM_JacobiEig)->Arg(8)->Arg(16)->Arg(32);

static void BM_SimplexRandom(benchmark::State& state) {
    SplitMix64 rng(2);
    const std::size_t m = 7;
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    L1Problem p;
    p.A = Mat(m, n);
    for (double& v : p.A.a) v = rng.uniform(-1.0, 1.0);
    std::vector<double> a0(n, 0.0);
    for (int j = 0; j < 5; ++j) a0[rng.below(n)] = rng.uniform(-1.0, 1.0);
    p.y = p.A * a0;
    for (auto _ : state) {
        const L1Solution s = solve_min_l1(p);
        benchmark::DoNotOptimize(s.objective);
    }
}
BENCHMARK(BM_SimplexRandom)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_BpGridTwoSpike(benchmark::State& state) {
    const int fc = 2;
    const double h = 0.1;
    const MomentVector y = moments(
        AtomicMeasure({Atom{TorusPoint(h / 2), 1.0}, Atom{TorusPoint(-h / 2), -1.0}}),
        TrigSystem(fc));
    BpConfig cfg;
    cfg.grid_size = state.range(0);
    cfg.polish = false;
    for (auto _ : state) {
        const BpResult r = solve_bp_grid(y, cfg);
        benchmark::DoNotOptimize(r.objective);
    }
}
BENCHMARK(BM_BpGridTwoSpike)->Arg(512)->Arg(2048)->Arg(4096);

static void BM_CertifiedSupNorm(benchmark::State& state) {
    const auto [mu, eta] = oracle_solution(3, 0.05);
    const std::int64_t n_check = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(certified_sup_norm(eta, n_check));
    }
}
BENCHMARK(BM_CertifiedSupNorm)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_CaratheodoryPrune(benchmark::State& state) {
    SplitMix64 rng(3);
    const std::size_t m = 7;
    const std::size_t r = static_cast<std::size_t>(state.range(0));
    FeatureInstance inst;
    inst.features = Mat(m, r);
    for (double& v : inst.features.a) v = rng.uniform(-1.0, 1.0);
    inst.amplitudes.resize(r);
    for (double& v : inst.amplitudes) v = rng.uniform(0.1, 1.0);
    inst.target = inst.features * inst.amplitudes;
    for (auto _ : state) {
        const FeatureInstance out = caratheodory_prune(inst);
        benchmark::DoNotOptimize(out.amplitudes);
    }
}
BENCHMARK(BM_CaratheodoryPrune)->Arg(20)->Arg(50)->Arg(100);

static void BM_MomentRecovery(benchmark::State& state) {
    SplitMix64 rng(4);
    const int fc = static_cast<int>(state.range(0));
    std::vector<Atom> atoms;
    for (int i = 0; i < fc; ++i)
        atoms.push_back(Atom{TorusPoint((i + 0.3) / fc), rng.uniform(0.5, 2.0)});
    const MomentVector y = moments(AtomicMeasure(atoms), TrigSystem(fc));
    for (auto _ : state) {
        const MomentRecovery rec = recover_nonneg(y);
        benchmark::DoNotOptimize(rec.measure);
    }
}
BENCHMARK(BM_MomentRecovery)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
