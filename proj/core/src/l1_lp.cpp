#include "spikes/l1_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spikes {

namespace {

constexpr double kRcTol = 1e-9;   // reduced-cost optimality threshold
constexpr double kPivTol = 1e-9;  // smallest usable pivot element

// Internal variable numbering: original column k splits into variables
// 2k (a_k+) and 2k+1 (a_k-); artificial i lives at 2n + i. The entering
// rule is most-negative reduced cost, degrading to Bland's lowest eligible
// index whenever a streak of degenerate pivots signals possible cycling.
//
// Columns are normalized to unit 2-norm internally (costs scale inversely),
// an exact substitution that leaves the optimum, the dual vector, and the
// vertex structure untouched while making every pivot tolerance meaningful
// on badly scaled inputs. Basis systems are solved through a fresh dense LU
// with partial pivoting after every pivot; at the intended sizes (m up to a
// few dozen) the factorization is cheaper than pricing, and the basic values
// are recomputed from the factors so no incremental drift accumulates.
class Simplex {
public:
    Simplex(const L1Problem& prob, double tol)
        : m_(prob.A.rows), n_(prob.A.cols), a_(prob.A), tol_(tol) {
        costed_.assign(n_, true);
        for (std::size_t k : prob.free_cols) {
            if (k >= n_) throw std::invalid_argument("solve_min_l1: free column out of range");
            costed_[k] = false;
        }
        for (double v : prob.A.a)
            if (!std::isfinite(v)) throw std::invalid_argument("solve_min_l1: non-finite matrix");

        // Flip rows so the right-hand side is nonnegative; the artificial
        // basis then starts feasible with identity columns.
        flip_.assign(m_, 1.0);
        rhs_ = prob.y;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!std::isfinite(rhs_[i])) throw std::invalid_argument("solve_min_l1: non-finite y");
            if (rhs_[i] < 0.0) {
                flip_[i] = -1.0;
                rhs_[i] = -rhs_[i];
                for (std::size_t j = 0; j < n_; ++j) a_(i, j) = -a_(i, j);
            }
        }

        // Column normalization; (numerically) zero columns can never pay
        // their way and are excluded from pricing outright.
        scale_.assign(n_, 1.0);
        dead_.assign(n_, false);
        for (std::size_t k = 0; k < n_; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) s += a_(i, k) * a_(i, k);
            s = std::sqrt(s);
            if (s < 1e-140) {
                dead_[k] = true;
                continue;
            }
            scale_[k] = s;
            for (std::size_t i = 0; i < m_; ++i) a_(i, k) /= s;
        }

        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = artificial(i);
        refactor();
    }

    L1Solution run() {
        L1Solution out;
        phase_ = 1;
        const bool feasible = iterate();
        if (!feasible) {
            out.status = LpStatus::infeasible;
            out.a.assign(n_, 0.0);
            out.dual.assign(m_, 0.0);
            out.pivots = pivots_;
            return out;
        }
        phase_ = 2;
        if (!iterate()) {
            out.status = LpStatus::unbounded;
            out.a.assign(n_, 0.0);
            out.dual.assign(m_, 0.0);
            out.pivots = pivots_;
            return out;
        }

        out.status = LpStatus::optimal;
        out.a.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t v = basis_[i];
            if (v >= 2 * n_) continue;  // artificial pinned at zero
            const std::size_t col = v / 2;
            const double value = xb_[i] / scale_[col];
            out.a[col] += (v % 2 == 0) ? value : -value;
        }
        out.objective = 0.0;
        for (std::size_t k = 0; k < n_; ++k)
            if (costed_[k]) out.objective += std::abs(out.a[k]);

        const std::vector<double> p = prices();
        out.dual.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) out.dual[i] = flip_[i] * p[i];
        out.pivots = pivots_;
        return out;
    }

private:
    std::size_t artificial(std::size_t i) const { return 2 * n_ + i; }

    // Column of the working (flipped, normalized) matrix for a variable.
    std::vector<double> column(std::size_t var) const {
        std::vector<double> col(m_, 0.0);
        if (var >= 2 * n_) {
            col[var - 2 * n_] = 1.0;
        } else {
            const std::size_t k = var / 2;
            const double sgn = (var % 2 == 0) ? 1.0 : -1.0;
            for (std::size_t i = 0; i < m_; ++i) col[i] = sgn * a_(i, k);
        }
        return col;
    }

    // Factor the current basis and recompute the basic values from it.
    void refactor() {
        Mat b(m_, m_);
        for (std::size_t j = 0; j < m_; ++j) {
            const std::vector<double> col = column(basis_[j]);
            for (std::size_t i = 0; i < m_; ++i) b(i, j) = col[i];
        }
        fact_ = lu_factor(b);
        if (fact_.singular) throw std::runtime_error("solve_min_l1: basis became singular");
        xb_ = lu_solve(fact_, rhs_);
        for (double& v : xb_) {
            if (v < 0.0 && v > -1e-7) v = 0.0;
        }
    }

    // p^T = c_B^T B^{-1}, i.e. B^T p = c_B.
    std::vector<double> prices() const {
        std::vector<double> cb(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t var = basis_[i];
            if (var >= 2 * n_)
                cb[i] = phase_ == 1 ? 1.0 : 0.0;
            else
                cb[i] = (phase_ == 2 && costed_[var / 2]) ? 1.0 / scale_[var / 2] : 0.0;
        }
        return lu_solve_transposed(fact_, cb);
    }

    double artificial_mass() const {
        double z = 0.0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 2 * n_) z += std::max(xb_[i], 0.0);
        return z;
    }

    // Leaving row by the min-ratio rule; within a small band above the
    // minimum ratio the row with the largest pivot magnitude wins, with the
    // basis index breaking near-equal magnitudes. Artificials pinned at zero
    // in phase 2 block in both directions.
    std::size_t ratio_test(const std::vector<double>& d, double* step) const {
        auto row_ratio = [&](std::size_t i, double* ratio) {
            if (phase_ == 2 && basis_[i] >= 2 * n_) {
                if (std::abs(d[i]) <= kPivTol) return false;
                *ratio = 0.0;
            } else {
                if (d[i] <= kPivTol) return false;
                *ratio = std::max(xb_[i], 0.0) / d[i];
            }
            return true;
        };

        double tmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m_; ++i) {
            double r;
            if (row_ratio(i, &r)) tmin = std::min(tmin, r);
        }
        if (tmin == std::numeric_limits<double>::infinity()) return kNone;

        const double band = tmin + 1e-10 * (1.0 + tmin);
        std::size_t leave = kNone;
        for (std::size_t i = 0; i < m_; ++i) {
            double r;
            if (!row_ratio(i, &r) || r > band) continue;
            if (leave == kNone) {
                leave = i;
                continue;
            }
            const double cand = std::abs(d[i]), have = std::abs(d[leave]);
            if (cand > 4.0 * have || (cand > 0.25 * have && basis_[i] < basis_[leave])) leave = i;
        }
        double r = 0.0;
        row_ratio(leave, &r);
        *step = r;
        return leave;
    }

    // Runs simplex for the current phase. Returns false on phase-1
    // infeasibility or phase-2 unboundedness.
    bool iterate() {
        const long pivot_cap = 200L * static_cast<long>(n_ + 2 * m_) + 5000L;
        long count = 0;
        for (;;) {
            if (++count > pivot_cap)
                throw std::runtime_error("solve_min_l1: pivot limit exceeded (numerical stall)");

            // Phase 1 only has to reach zero artificial mass, not prove
            // optimality; stopping here avoids churning on reduced-cost
            // noise in degenerate endgames.
            if (phase_ == 1 && artificial_mass() <= tol_) return true;

            const std::vector<double> p = prices();

            // w = A^T p over original columns gives both split reduced costs.
            std::vector<double> w(n_, 0.0);
            for (std::size_t i = 0; i < m_; ++i) {
                const double pi = p[i];
                if (pi == 0.0) continue;
                for (std::size_t k = 0; k < n_; ++k) w[k] += a_(i, k) * pi;
            }

            // Entering candidates with negative reduced cost. The default
            // order is by most negative reduced cost (good pivot quality on
            // collinear column families); a streak of degenerate pivots
            // switches to Bland's index order, whose anti-cycling guarantee
            // then applies, until a nondegenerate step is made. Both orders
            // are deterministic.
            struct Candidate {
                double rc;
                std::size_t var;
            };
            std::vector<Candidate> cands;
            for (std::size_t k = 0; k < n_; ++k) {
                if (dead_[k]) continue;
                const double c = (phase_ == 1) ? 0.0 : (costed_[k] ? 1.0 / scale_[k] : 0.0);
                if (c - w[k] < -kRcTol && !in_basis(2 * k))
                    cands.push_back({c - w[k], 2 * k});
                if (c + w[k] < -kRcTol && !in_basis(2 * k + 1))
                    cands.push_back({c + w[k], 2 * k + 1});
            }
            if (phase_ == 1) {  // artificials may re-enter only in phase 1
                for (std::size_t i = 0; i < m_; ++i)
                    if (1.0 - p[i] < -kRcTol && !in_basis(artificial(i)))
                        cands.push_back({1.0 - p[i], artificial(i)});
            }
            if (!bland_mode_)
                std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a,
                                                                const Candidate& b) {
                    if (a.rc != b.rc) return a.rc < b.rc;
                    return a.var < b.var;
                });
            else
                std::stable_sort(cands.begin(), cands.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return a.var < b.var;
                                 });

            std::size_t entering = kNone;
            std::size_t leave = kNone;
            double step = 0.0;
            std::vector<double> d;
            bool found = false;
            for (const Candidate& cand : cands) {
                std::vector<double> dir = lu_solve(fact_, column(cand.var));
                if (norm_inf(dir) < 1e-7) continue;
                double s = 0.0;
                const std::size_t row = ratio_test(dir, &s);
                if (row == kNone) {
                    // No blocking row. A costed or phase-1 ray cannot be
                    // genuinely unbounded, so treat it as noise; a free
                    // column's ray is the real thing.
                    if (phase_ == 2 && cand.var < 2 * n_ && !costed_[cand.var / 2]) {
                        entering = cand.var;
                        leave = kNone;
                        found = true;
                        break;
                    }
                    continue;
                }
                // Quality bar: with unit-norm columns a healthy pivot is
                // O(1); entering through a tiny one would poison the basis.
                if (std::abs(dir[row]) < 1e-6) continue;
                entering = cand.var;
                leave = row;
                step = s;
                d = std::move(dir);
                found = true;
                break;
            }

            if (!found) {
                if (phase_ == 1) return artificial_mass() <= tol_;
                return true;
            }
            if (leave == kNone) return false;  // unbounded free ray

            if (step <= 1e-12) {
                if (++degenerate_streak_ > static_cast<long>(2 * m_) + 10) bland_mode_ = true;
            } else {
                degenerate_streak_ = 0;
                bland_mode_ = false;
            }

            basis_[leave] = entering;
            ++pivots_;
            refactor();
        }
    }

    bool in_basis(std::size_t var) const {
        return std::find(basis_.begin(), basis_.end(), var) != basis_.end();
    }

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t m_, n_;
    Mat a_;                       // row-flipped, column-normalized matrix
    std::vector<double> rhs_;     // flipped right-hand side, >= 0
    std::vector<double> flip_;
    std::vector<double> scale_;   // original column 2-norms
    std::vector<bool> dead_;      // numerically zero columns
    std::vector<bool> costed_;
    double tol_;

    int phase_ = 1;
    int pivots_ = 0;
    bool bland_mode_ = false;
    long degenerate_streak_ = 0;
    std::vector<std::size_t> basis_;
    LuFactors fact_;
    std::vector<double> xb_;
};

}  // namespace

L1Solution solve_min_l1(const L1Problem& prob, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("solve_min_l1: tol must be positive");
    if (prob.y.size() != prob.A.rows) throw std::invalid_argument("solve_min_l1: y size mismatch");

    // y = 0: the zero vertex with the zero dual (the phase-1 basis is
    // already optimal and no pivot is needed).
    if (norm_inf(prob.y) == 0.0) {
        L1Solution out;
        out.a.assign(prob.A.cols, 0.0);
        out.dual.assign(prob.A.rows, 0.0);
        return out;
    }

    const double scale = std::max(1.0, norm_inf(prob.y));
    Simplex s(prob, tol * scale);
    return s.run();
}

DualResiduals dual_residuals(const L1Problem& prob, const L1Solution& sol) {
    if (sol.status != LpStatus::optimal)
        throw std::invalid_argument("dual_residuals: solution is not optimal");
    DualResiduals r;
    const std::vector<double> res = prob.A * sol.a;
    for (std::size_t i = 0; i < prob.y.size(); ++i)
        r.feas_inf = std::max(r.feas_inf, std::abs(res[i] - prob.y[i]));

    std::vector<bool> costed(prob.A.cols, true);
    for (std::size_t k : prob.free_cols) costed[k] = false;
    const std::vector<double> w = mul_transpose(prob.A, sol.dual);
    double wmax = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (costed[k]) wmax = std::max(wmax, std::abs(w[k]));
    r.dual_inf = std::max(0.0, wmax - 1.0);
    r.gap = std::abs(sol.objective - dot(sol.dual, prob.y));
    return r;
}

}  // namespace spikes
