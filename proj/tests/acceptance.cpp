// Acceptance suite: end-to-end criteria with pinned tolerances, one
// pass/fail line each. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "spikes/bp_torus.hpp"
#include "spikes/certificate.hpp"
#include "spikes/l1_lp.hpp"
#include "spikes/measures.hpp"
#include "spikes/rng.hpp"
#include "spikes/sparsify.hpp"
#include "spikes/spline.hpp"
#include "spikes/toeplitz.hpp"
#include "spikes/two_spike.hpp"
#include "test_util.hpp"

using namespace spikes;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AtomicMeasure spike_pair(double h) {
    return AtomicMeasure({Atom{TorusPoint(h / 2), 1.0}, Atom{TorusPoint(-h / 2), -1.0}});
}

// 1. Two-spike reproduction: grid BP + polish recovers the comb, its
//    amplitudes, the certified gap, and the top-sine dual.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_pos = 0.0, worst_amp = 0.0, worst_gap = 0.0, worst_dual = 0.0;
    bool counts_ok = true;
    for (int fc = 1; fc <= 3; ++fc) {
        const double h = 0.5 / (2.0 * fc);
        const MomentVector y = moments(spike_pair(h), TrigSystem(fc));
        const auto [oracle_mu, oracle_dual] = oracle_solution(fc, h);

        BpConfig cfg;
        cfg.grid_size = 4096;
        cfg.polish = true;
        const BpResult r = solve_bp_grid(y, cfg);

        counts_ok = counts_ok && r.measure.size() == 2 * static_cast<std::size_t>(fc);
        const testutil::MatchError err = testutil::match_atoms(r.measure, oracle_mu);
        worst_pos = std::max(worst_pos, err.position);
        // relative amplitude error against the closed form
        double rel = 0.0;
        if (r.measure.size() == oracle_mu.size()) {
            for (std::size_t i = 0; i < oracle_mu.size(); ++i) {
                double best = 1e300;
                const Atom& o = oracle_mu.atoms()[i];
                for (const Atom& g : r.measure.atoms()) {
                    const double d = TorusPoint::distance(g.position, o.position);
                    if (d < 1e-3)
                        best = std::min(best,
                                        std::abs(g.amplitude - o.amplitude) / std::abs(o.amplitude));
                }
                rel = std::max(rel, best);
            }
        } else {
            rel = 1e300;
        }
        worst_amp = std::max(worst_amp, rel);
        worst_gap = std::max(worst_gap, r.duality_gap);
        for (std::size_t k = 0; k < r.dual.p.size(); ++k) {
            const double want = (k + 1 == r.dual.p.size()) ? 1.0 : 0.0;
            worst_dual = std::max(worst_dual, std::abs(r.dual.p[k] - want));
        }
    }
    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "pos %.2e (<=1e-3), rel amp %.2e (<=1e-3), gap %.2e (<=1e-6), dual %.2e "
                  "(<=1e-4), %.1f s",
                  worst_pos, worst_amp, worst_gap, worst_dual, seconds_since(t0));
    report(1, "two-spike reproduction (fc = 1..3, N = 4096)",
           counts_ok && worst_pos <= 1e-3 && worst_amp <= 1e-3 && worst_gap <= 1e-6 &&
               worst_dual <= 1e-4,
           detail);
}

// 2. Boundary recovery: h = 1/(2 fc) returns the spike pair itself.
void criterion2() {
    double worst = 0.0;
    bool counts_ok = true;
    for (int fc = 1; fc <= 4; ++fc) {
        const double h = 1.0 / (2.0 * fc);
        const MomentVector y = moments(spike_pair(h), TrigSystem(fc));
        BpConfig cfg;
        cfg.grid_size = 4096;
        cfg.polish = true;
        const BpResult r = solve_bp_grid(y, cfg);
        const AtomicMeasure truth = oracle_boundary(fc);
        counts_ok = counts_ok && r.measure.size() == 2;
        const testutil::MatchError err = testutil::match_atoms(r.measure, truth);
        worst = std::max(worst, std::max(err.position, err.amplitude));
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "max error %.2e (<=1e-6)", worst);
    report(2, "boundary recovery (h = 1/(2 fc), fc = 1..4)", counts_ok && worst <= 1e-6, detail);
}

// 3. Fisher-Jerome count: BP vertex solutions and pruned measures never
//    exceed 2 fc + 1 atoms across 200 seeded feasible instances.
void criterion3() {
    SplitMix64 rng(1003);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int fc = 1 + static_cast<int>(rng.below(3));
        const int m = 2 * fc + 1;
        const int atoms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m + 3)));
        const AtomicMeasure mu =
            testutil::random_separated_measure(rng, atoms, 0.01, 0.2, 1.5, true);
        const MomentVector y = moments(mu, TrigSystem(fc));
        BpConfig cfg;
        cfg.grid_size = 512;
        cfg.merge_radius = 0.0;
        cfg.polish = false;
        const BpResult r = solve_bp_grid(y, cfg);
        if (static_cast<int>(r.measure.size()) > m) ++violations;
    }
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 3 + rng.below(5);
        const std::size_t r = m + 1 + rng.below(30);
        FeatureInstance inst;
        inst.features = testutil::random_matrix(rng, m, r);
        inst.amplitudes.resize(r);
        for (double& v : inst.amplitudes) v = rng.uniform(0.1, 1.0);
        inst.target = inst.features * inst.amplitudes;
        const FeatureInstance out = caratheodory_prune(inst);
        if (out.amplitudes.size() > m) ++violations;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d violations in 200 instances", violations);
    report(3, "atom-count bound (vertex solutions and pruned measures)", violations == 0, detail);
}

// 4. Caratheodory-Toeplitz round trip plus the PSD-necessity negative test.
void criterion4() {
    SplitMix64 rng(271828);
    int recovered = 0;
    double worst = 0.0;
    int done = 0;
    while (done < 200) {
        const int fc = 1 + static_cast<int>(rng.below(5));
        const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(fc)));
        const AtomicMeasure mu = testutil::random_separated_measure(rng, r, 0.5 / fc, 0.5, 2.0);
        if (static_cast<int>(mu.size()) != r) continue;
        ++done;
        const MomentRecovery rec = recover_nonneg(moments(mu, TrigSystem(fc)));
        if (rec.branch != MomentBranch::recovered) continue;
        const testutil::MatchError err = testutil::match_atoms(rec.measure, mu);
        if (err.position <= 1e-6 && err.amplitude <= 1e-6) ++recovered;
        worst = std::max(worst, std::max(err.position, err.amplitude));
    }
    const MomentVector bad(TrigSystem(1), {0.0, 1.0, 0.0});  // c = (0, 1)
    const bool negative_ok = recover_nonneg(bad).branch == MomentBranch::no_solution;
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d/200 recovered, worst error %.2e, negative test %s",
                  recovered, worst, negative_ok ? "rejected" : "NOT rejected");
    report(4, "trigonometric moment round trip", recovered == 200 && negative_ok, detail);
}

// 5. Barvinok bound on 100 seeded PSD feasibility instances (n = 10, m = 5).
void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(515);
    int rank_bad = 0;
    double worst_drift = 0.0, worst_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 10, m = 5;
        const Mat g = testutil::random_matrix(rng, n, n);
        PsdInstance inst;
        inst.q = Mat(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += g(i, k) * g(j, k);
                inst.q(i, j) = s;
            }
        for (std::size_t c = 0; c < m; ++c) {
            Mat phi(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    const double v = rng.uniform(-1.0, 1.0);
                    phi(i, j) = v;
                    phi(j, i) = v;
                }
            inst.rhs.push_back(mat_inner(phi, inst.q));
            inst.constraints.push_back(std::move(phi));
        }
        const PsdInstance out = psd_rank_reduce(inst);
        if (sym_rank(out.q, 1e-9) > 2) ++rank_bad;  // floor((sqrt(41)-1)/2) = 2
        const double scale = std::max(1.0, norm_inf(inst.rhs));
        for (std::size_t i = 0; i < m; ++i)
            worst_drift = std::max(
                worst_drift, std::abs(mat_inner(out.constraints[i], out.q) - inst.rhs[i]) / scale);
        const SymEig e = jacobi_eig(out.q);
        double amax = 0.0;
        for (double v : e.values) amax = std::max(amax, std::abs(v));
        worst_eig = std::min(worst_eig, e.values.front() / std::max(1.0, amax));
        worst_eig = std::min(worst_eig, 0.0);
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "rank>2 in %d/100, drift %.2e (<=1e-8), min eig %.2e (>=-1e-9), %.2f s total",
                  rank_bad, worst_drift, worst_eig, seconds_since(t0));
    report(5, "Barvinok rank bound (n = 10, m = 5)",
           rank_bad == 0 && worst_drift <= 1e-8 && worst_eig >= -1e-9, detail);
}

// 6. Spline knot bound and interpolation across 100 seeded problems.
void criterion6() {
    SplitMix64 rng(606);
    int bound_bad = 0;
    double worst_interp = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const std::size_t m =
            static_cast<std::size_t>(n) + 1 + rng.below(static_cast<std::uint64_t>(10 - n));
        SplineProblem prob;
        prob.order = n;
        prob.knot_grid = 512;
        std::vector<double> xs;
        while (xs.size() < m) {
            const double s = rng.uniform();
            bool ok = true;
            for (double prev : xs)
                if (std::abs(prev - s) < 0.01) ok = false;
            if (ok) xs.push_back(s);
        }
        for (double s : xs) prob.samples.push_back({s, rng.uniform(-2.0, 2.0)});
        const SplineSolution sol = solve_spline(prob);
        if (static_cast<int>(sol.model.knots.size()) > static_cast<int>(m) - sol.poly_block_rank)
            ++bound_bad;
        for (const auto& [s, v] : prob.samples)
            worst_interp = std::max(worst_interp, std::abs(eval_spline(sol.model, s) - v));
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "bound violations %d/100, interpolation %.2e (<=1e-8)",
                  bound_bad, worst_interp);
    report(6, "spline knot bound r <= m - d", bound_bad == 0 && worst_interp <= 1e-8, detail);
}

// 7. Pruning an LP-optimal solution preserves the optimal value.
void criterion7() {
    SplitMix64 rng(707);
    double worst = 0.0;
    int failures_here = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + rng.below(5);
        const std::size_t r = m + 2 + rng.below(20);
        Mat a = testutil::random_matrix(rng, m, r);
        std::vector<double> seed_amp(r, 0.0);
        for (std::size_t j = 0; j < m + 1; ++j) seed_amp[rng.below(r)] = rng.uniform(-1.0, 1.0);
        const std::vector<double> y = a * seed_amp;
        const L1Solution sol = solve_min_l1(L1Problem{a, y, {}});
        if (sol.status != LpStatus::optimal) {
            ++failures_here;
            continue;
        }
        FeatureInstance inst;
        inst.features = a;
        inst.amplitudes = sol.a;
        inst.target = y;
        const FeatureInstance out = caratheodory_prune(inst);
        double tv = 0.0;
        for (double v : out.amplitudes) tv += std::abs(v);
        worst = std::max(worst, std::abs(tv - sol.objective));
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "max |tv - optimum| = %.2e (<=1e-10)", worst);
    report(7, "pruning preserves LP optimality", failures_here == 0 && worst <= 1e-10, detail);
}

// 8. The simplex agrees with exhaustive vertex enumeration on every small
//    instance (n <= 8, m <= 4).
void criterion8() {
    SplitMix64 rng(808);
    double worst = 0.0;
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + rng.below(4);
        const std::size_t n = m + rng.below(9 - m);
        L1Problem p;
        p.A = testutil::random_matrix(rng, m, n);
        std::vector<double> a0(n);
        for (double& v : a0) v = rng.uniform(-1.0, 1.0);
        p.y = p.A * a0;
        if (trial % 4 == 0 && n > 1) p.free_cols = {n - 1};
        const L1Solution s = solve_min_l1(p);
        if (s.status != LpStatus::optimal) {
            ++bad;
            continue;
        }
        const double oracle = testutil::brute_force_min_l1(p);
        worst = std::max(worst, std::abs(s.objective - oracle));
        if (std::abs(s.objective - oracle) > 1e-9 * std::max(1.0, oracle)) ++bad;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d/100 mismatches, worst gap %.2e (<=1e-9)", bad, worst);
    report(8, "LP matches exhaustive vertex enumeration", bad == 0, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
