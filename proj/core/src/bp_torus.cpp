#include "spikes/bp_torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spikes/certificate.hpp"

namespace spikes {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

Mat moment_matrix(const std::vector<TorusPoint>& pos, TrigSystem sys) {
    Mat a(static_cast<std::size_t>(sys.size()), pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j)
        for (int k = 0; k < sys.size(); ++k)
            a(static_cast<std::size_t>(k), j) = eval_basis(sys, k, pos[j]);
    return a;
}

struct Fit {
    std::vector<double> amplitudes;
    double residual = 0.0;  // ||A a - y||_inf
    double tv = 0.0;        // sum |a_j|
};

Fit fit_support(const std::vector<TorusPoint>& pos, const MomentVector& y) {
    Fit f;
    if (pos.empty()) {
        f.residual = norm_inf(y.y);
        return f;
    }
    const Mat a = moment_matrix(pos, y.system);
    f.amplitudes = least_squares(a, y.y);
    const std::vector<double> back = a * f.amplitudes;
    for (std::size_t k = 0; k < y.y.size(); ++k)
        f.residual = std::max(f.residual, std::abs(back[k] - y.y[k]));
    for (double v : f.amplitudes) f.tv += std::abs(v);
    return f;
}

AtomicMeasure assemble(const std::vector<TorusPoint>& pos, const std::vector<double>& amp) {
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < pos.size(); ++j) atoms.push_back(Atom{pos[j], amp[j]});
    return canonicalize(AtomicMeasure(std::move(atoms)), 0.0);
}

// Golden-section minimization of fn over [lo, hi]; fn need not be finite
// everywhere (+inf marks rejected points).
template <typename F>
double golden_min(F&& fn, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

// Half-width of the move window for atom j: half the gap to the nearest
// other atom, capped at the main-lobe radius of the measurement kernel so
// the 1-d search stays unimodal.
double bracket_half_width(const std::vector<TorusPoint>& pos, std::size_t j, int fc) {
    double gap = 0.5;
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (i != j) gap = std::min(gap, TorusPoint::distance(pos[i], pos[j]));
    const double lobe = 1.0 / (2.0 * (2.0 * fc + 1.0));
    return std::max(std::min(0.5 * gap, lobe), 1e-9);
}

}  // namespace

double moment_residual(const AtomicMeasure& mu, const MomentVector& y) {
    const MomentVector back = moments(mu, y.system);
    double r = 0.0;
    for (std::size_t k = 0; k < y.y.size(); ++k)
        r = std::max(r, std::abs(back.y[k] - y.y[k]));
    return r;
}

namespace {

// Local grid refinement: re-solve the l1 problem on candidate positions
// densified around the current support. The candidate set contains the
// support itself, so every level stays feasible and the optimum value is
// nonincreasing; positions converge geometrically in the window size.
// Off-grid optima trap coordinate-wise polishing (an exactly feasible
// suboptimal vertex admits no feasible single-position move), which this
// escape hatch does not suffer from since each level is solved globally
// over its candidate set.
AtomicMeasure refine_support_lp(const AtomicMeasure& start, const MomentVector& y,
                                double window0, int levels) {
    AtomicMeasure measure = start;
    double window = window0;
    const int per_side = 24;
    for (int level = 0; level < levels && !measure.empty(); ++level) {
        std::vector<double> candidates;
        for (const Atom& atom : measure.atoms()) {
            candidates.push_back(atom.position.value());
            for (int k = -per_side; k <= per_side; ++k) {
                if (k == 0) continue;
                candidates.push_back(
                    TorusPoint::wrap(atom.position.value() + window * k / per_side));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        L1Problem lp;
        lp.A = Mat(static_cast<std::size_t>(y.system.size()), candidates.size());
        lp.y = y.y;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            for (int k = 0; k < y.system.size(); ++k)
                lp.A(static_cast<std::size_t>(k), j) =
                    eval_basis(y.system, k, TorusPoint(candidates[j]));
        const L1Solution sol = solve_min_l1(lp);
        if (sol.status != LpStatus::optimal) break;

        std::vector<Atom> atoms;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (sol.a[j] != 0.0) atoms.push_back(Atom{TorusPoint(candidates[j]), sol.a[j]});
        const AtomicMeasure next = canonicalize(AtomicMeasure(std::move(atoms)),
                                                2.0 * window / per_side);
        if (tv_norm(next) <= tv_norm(measure) + 1e-12 &&
            moment_residual(next, y) <= std::max(moment_residual(measure, y), 1e-9))
            measure = next;
        window = 4.0 * window / per_side;
    }
    return measure;
}

}  // namespace

TrigPolynomial extract_dual(const L1Solution& sol, TrigSystem sys) {
    if (sol.status != LpStatus::optimal)
        throw std::invalid_argument("extract_dual: LP did not reach an optimum");
    return TrigPolynomial(sys, sol.dual);
}

TrigPolynomial refine_dual(const AtomicMeasure& mu, TrigSystem sys) {
    const AtomicMeasure canon = canonicalize(mu, 0.0);
    const std::size_t r = canon.size();
    const std::size_t m = static_cast<std::size_t>(sys.size());
    if (r == 0) return TrigPolynomial::zero(sys);

    // Rows: eta(x_i) = sign(a_i) and (scaled) eta'(x_i) = 0.
    Mat a(2 * r, m);
    std::vector<double> b(2 * r, 0.0);
    const double dscale = 1.0 / (kTwoPi * sys.cutoff());
    for (std::size_t i = 0; i < r; ++i) {
        const TorusPoint x = canon.atoms()[i].position;
        b[i] = canon.atoms()[i].amplitude >= 0.0 ? 1.0 : -1.0;
        a(i, 0) = 1.0;
        for (int j = 1; j <= sys.cutoff(); ++j) {
            const double ang = kTwoPi * TorusPoint::wrap(static_cast<double>(j) * x.value());
            a(i, static_cast<std::size_t>(2 * j - 1)) = std::cos(ang);
            a(i, static_cast<std::size_t>(2 * j)) = std::sin(ang);
            a(r + i, static_cast<std::size_t>(2 * j - 1)) = -kTwoPi * j * std::sin(ang) * dscale;
            a(r + i, static_cast<std::size_t>(2 * j)) = kTwoPi * j * std::cos(ang) * dscale;
        }
    }
    return TrigPolynomial(sys, least_squares(a, b));
}

AtomicMeasure polish_atoms(const AtomicMeasure& mu, const MomentVector& y, int max_iter,
                           double step_tol, double feas_tol) {
    const AtomicMeasure input = canonicalize(mu, 0.0);
    if (static_cast<int>(input.size()) > y.system.size())
        throw std::invalid_argument("polish_atoms: atom count exceeds the measurement count");
    if (input.empty()) return input;

    std::vector<TorusPoint> pos;
    for (const Atom& atom : input.atoms()) pos.push_back(atom.position);

    const double res_in = moment_residual(input, y);
    const double tv_in = tv_norm(input);

    Fit cur = fit_support(pos, y);
    const int fc = y.system.cutoff();

    for (int round = 0; round < 4; ++round) {
        // Residual descent while infeasible: coordinate-wise golden-section
        // on the least-squares moment residual.
        for (int sweep = 0; sweep < max_iter && cur.residual > feas_tol; ++sweep) {
            double moved = 0.0;
            for (std::size_t j = 0; j < pos.size(); ++j) {
                const double w = bracket_half_width(pos, j, fc);
                const double center = pos[j].value();
                auto objective = [&](double x) {
                    std::vector<TorusPoint> trial = pos;
                    trial[j] = TorusPoint(x);
                    return fit_support(trial, y).residual;
                };
                const double best = golden_min(objective, center - w, center + w, step_tol * 0.5);
                std::vector<TorusPoint> trial = pos;
                trial[j] = TorusPoint(best);
                const Fit f = fit_support(trial, y);
                if (f.residual < cur.residual) {
                    moved = std::max(moved, std::abs(best - center));
                    pos = trial;
                    cur = f;
                }
            }
            if (moved < step_tol) break;
        }

        // Objective descent once feasible: accept a move only when the refit
        // stays within feas_tol and the total variation strictly decreases.
        for (int sweep = 0; sweep < max_iter && cur.residual <= feas_tol; ++sweep) {
            double moved = 0.0;
            for (std::size_t j = 0; j < pos.size(); ++j) {
                const double w = bracket_half_width(pos, j, fc);
                const double center = pos[j].value();
                auto objective = [&](double x) {
                    std::vector<TorusPoint> trial = pos;
                    trial[j] = TorusPoint(x);
                    const Fit f = fit_support(trial, y);
                    return f.residual <= feas_tol ? f.tv
                                                  : std::numeric_limits<double>::infinity();
                };
                const double best = golden_min(objective, center - w, center + w, step_tol * 0.5);
                std::vector<TorusPoint> trial = pos;
                trial[j] = TorusPoint(best);
                const Fit f = fit_support(trial, y);
                if (f.residual <= feas_tol && f.tv < cur.tv - 1e-14 * std::max(1.0, cur.tv)) {
                    moved = std::max(moved, std::abs(best - center));
                    pos = trial;
                    cur = f;
                }
            }
            if (moved < step_tol) break;
        }

        // Drop atoms the fit no longer charges. Removing a dust atom of
        // mass eps can raise the refit tv by O(eps), so the acceptance
        // allowance scales with the dropped amplitude.
        bool dropped_any = false;
        if (cur.residual <= feas_tol) {
            bool dropped = true;
            while (dropped && pos.size() > 1) {
                dropped = false;
                double amax = 0.0;
                for (double v : cur.amplitudes) amax = std::max(amax, std::abs(v));
                std::size_t weakest = pos.size();
                double weakest_amp = amax;
                for (std::size_t j = 0; j < pos.size(); ++j)
                    if (std::abs(cur.amplitudes[j]) < weakest_amp) {
                        weakest_amp = std::abs(cur.amplitudes[j]);
                        weakest = j;
                    }
                if (weakest == pos.size() || weakest_amp > 1e-3 * std::max(amax, 1.0)) break;
                std::vector<TorusPoint> trial = pos;
                trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(weakest));
                const Fit f = fit_support(trial, y);
                if (f.residual <= feas_tol && f.tv <= cur.tv + 32.0 * weakest_amp + 1e-12) {
                    pos = trial;
                    cur = f;
                    dropped = true;
                    dropped_any = true;
                }
            }
        }
        if (!dropped_any) break;  // nothing changed; further rounds are no-ops
    }

    AtomicMeasure out = assemble(pos, cur.amplitudes);

    // Fall back to the input when polishing failed to help (tiny relative
    // allowance covers the tv cost of dropped dust atoms).
    const double res_out = moment_residual(out, y);
    const double tv_out = tv_norm(out);
    const bool in_feasible = res_in <= feas_tol;
    if (in_feasible && (res_out > feas_tol || tv_out > tv_in * (1.0 + 1e-9) + 1e-12))
        return input;
    if (!in_feasible && res_out > res_in) return input;
    return out;
}

BpResult solve_bp_grid(const MomentVector& y, const BpConfig& cfg) {
    const TrigSystem sys = y.system;
    const int fc = sys.cutoff();
    const std::int64_t n = cfg.grid_size;
    if (n <= 4 * fc) throw std::invalid_argument("solve_bp_grid: grid must exceed 4 f_c nodes");
    for (double v : y.y)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_bp_grid: non-finite moments");
    const double merge_radius = cfg.merge_radius < 0.0 ? 2.0 / static_cast<double>(n)
                                                       : cfg.merge_radius;

    L1Problem lp;
    lp.A = Mat(static_cast<std::size_t>(sys.size()), static_cast<std::size_t>(n));
    lp.y = y.y;
    for (std::int64_t i = 0; i < n; ++i) {
        const TorusPoint g(static_cast<double>(i) / static_cast<double>(n));
        for (int k = 0; k < sys.size(); ++k)
            lp.A(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
                eval_basis(sys, k, g);
    }

    const L1Solution sol = solve_min_l1(lp);
    if (sol.status == LpStatus::infeasible)
        throw std::runtime_error("solve_bp_grid: grid LP infeasible (moments outside the span)");
    if (sol.status == LpStatus::unbounded)
        throw std::runtime_error("solve_bp_grid: grid LP unbounded");

    std::vector<Atom> grid_atoms;
    for (std::int64_t i = 0; i < n; ++i) {
        const double a = sol.a[static_cast<std::size_t>(i)];
        if (a != 0.0)
            grid_atoms.push_back(
                Atom{TorusPoint(static_cast<double>(i) / static_cast<double>(n)), a});
    }

    AtomicMeasure measure = canonicalize(AtomicMeasure(std::move(grid_atoms)), merge_radius);

    // Merging can nudge the moments; refit amplitudes on the merged support
    // when that helps.
    if (moment_residual(measure, y) > 1e-12 && !measure.empty()) {
        std::vector<TorusPoint> pos;
        for (const Atom& atom : measure.atoms()) pos.push_back(atom.position);
        const Fit f = fit_support(pos, y);
        AtomicMeasure refit = assemble(pos, f.amplitudes);
        if (moment_residual(refit, y) < moment_residual(measure, y)) measure = std::move(refit);
    }

    if (cfg.polish) {
        measure = refine_support_lp(measure, y, 2.0 / static_cast<double>(n), 5);
        measure = polish_atoms(measure, y, 60, 1e-10, cfg.feas_tol);
    }

    if (moment_residual(measure, y) > cfg.feas_tol * std::max(1.0, norm_inf(y.y)))
        throw std::runtime_error("solve_bp_grid: result violates the feasibility tolerance");

    BpResult out{measure, extract_dual(sol, sys), extract_dual(sol, sys)};
    out.lp_objective = sol.objective;
    out.lp_pivots = sol.pivots;
    out.objective = tv_norm(measure);

    // Candidate duals: the LP basic dual and the support-interpolating
    // refinement; keep whichever certifies the larger continuous bound.
    std::int64_t n_check = cfg.dual_check_n;
    if (n_check <= 0) {
        n_check = 4096LL * fc;
        if (cfg.polish) {
            // Push the Bernstein correction below ~1e-6 relative.
            const double target = std::numbers::pi * fc * std::max(out.objective, 1.0) * 4e6;
            while (static_cast<double>(n_check) < target && n_check < (1LL << 26)) n_check *= 2;
        }
    }
    auto certified_bound = [&](const TrigPolynomial& eta) {
        const double b = certified_sup_norm(eta, n_check);
        const double pair = pairing(eta, y);
        if (b <= 1e-300) return pair > 0.0 ? 0.0 : pair;
        return pair / b;
    };
    double bound = certified_bound(out.dual);
    if (!measure.empty()) {
        const TrigPolynomial refined = refine_dual(measure, sys);
        const double refined_bound = certified_bound(refined);
        if (refined_bound > bound) {
            out.dual = refined;
            bound = refined_bound;
        }
    }
    out.duality_gap = out.objective - bound;
    return out;
}

}  // namespace spikes
