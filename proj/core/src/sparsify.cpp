#include "spikes/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spikes {

namespace {
constexpr double kZeroAmp = 1e-13;
constexpr double kKernelRatio = 1e-11;  // singular-value ratio declaring a kernel
}  // namespace

double mat_inner(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("mat_inner: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
    return s;
}

int sym_rank(const Mat& q, double rank_tol) {
    const SymEig e = jacobi_eig(q);
    double amax = 0.0;
    for (double v : e.values) amax = std::max(amax, std::abs(v));
    int r = 0;
    for (double v : e.values)
        if (std::abs(v) > rank_tol * amax) ++r;
    return r;
}

FeatureInstance FeatureInstance::checked(Mat features, std::vector<double> amplitudes,
                                         std::vector<double> target, double feas_tol) {
    if (features.cols != amplitudes.size() || features.rows != target.size())
        throw std::invalid_argument("FeatureInstance: shape mismatch");
    FeatureInstance inst{std::move(features), std::move(amplitudes), std::move(target)};
    const std::vector<double> res = inst.features * inst.amplitudes;
    for (std::size_t i = 0; i < inst.target.size(); ++i)
        if (std::abs(res[i] - inst.target[i]) > feas_tol * std::max(1.0, norm_inf(inst.target)))
            throw std::invalid_argument("FeatureInstance: A a != target");
    return inst;
}

PsdInstance PsdInstance::checked(Mat q, std::vector<Mat> constraints, std::vector<double> rhs,
                                 double feas_tol, double psd_tol) {
    if (q.rows != q.cols) throw std::invalid_argument("PsdInstance: Q must be square");
    for (std::size_t i = 0; i < q.rows; ++i)
        for (std::size_t j = i + 1; j < q.cols; ++j)
            if (std::abs(q(i, j) - q(j, i)) > 1e-12)
                throw std::invalid_argument("PsdInstance: Q must be symmetric");
    if (constraints.size() != rhs.size())
        throw std::invalid_argument("PsdInstance: constraint/rhs count mismatch");
    PsdInstance inst{std::move(q), std::move(constraints), std::move(rhs)};
    const double scale = std::max(1.0, norm_inf(inst.rhs));
    for (std::size_t i = 0; i < inst.constraints.size(); ++i)
        if (std::abs(mat_inner(inst.constraints[i], inst.q) - inst.rhs[i]) > feas_tol * scale)
            throw std::invalid_argument("PsdInstance: constraints violated");
    const SymEig e = jacobi_eig(inst.q);
    double amax = 0.0;
    for (double v : e.values) amax = std::max(amax, std::abs(v));
    if (!e.values.empty() && e.values.front() < -psd_tol * std::max(1.0, amax))
        throw std::invalid_argument("PsdInstance: Q is not PSD");
    return inst;
}

FeatureInstance caratheodory_prune(const FeatureInstance& inst) {
    const std::size_t m = inst.features.rows;

    // Drop exact zero amplitudes up front.
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < inst.amplitudes.size(); ++j)
        if (inst.amplitudes[j] != 0.0) active.push_back(j);
    std::vector<double> amp;
    for (std::size_t j : active) amp.push_back(inst.amplitudes[j]);

    for (;;) {
        const std::size_t r = active.size();
        if (r == 0) break;

        // Any m + 1 columns already carry an exact kernel vector, so the
        // search need only look at a window of that size; the direction is
        // padded with zeros on the remaining atoms.
        const std::size_t win = std::min(r, m + 1);
        Mat sub(m, win);
        for (std::size_t j = 0; j < win; ++j)
            for (std::size_t i = 0; i < m; ++i) sub(i, j) = inst.features(i, active[j]);

        double ratio = 1.0;
        std::vector<double> d = kernel_vector(sub, &ratio);
        // A window wider than the row count always carries an exact kernel;
        // otherwise require a numerically unambiguous one.
        if (win <= m && ratio > kKernelRatio) break;
        d.resize(r, 0.0);

        // Orient so the TV directional derivative sum_i sign(a_i) d_i is <= 0;
        // on a tie keep +d. Walking to the first zero crossing then cannot
        // increase the total variation.
        double slope = 0.0;
        for (std::size_t j = 0; j < r; ++j) slope += (amp[j] >= 0.0 ? 1.0 : -1.0) * d[j];
        if (slope > 0.0)
            for (double& v : d) v = -v;

        double step = std::numeric_limits<double>::infinity();
        std::size_t vanish = r;
        for (std::size_t j = 0; j < r; ++j) {
            if (d[j] == 0.0) continue;
            const double cross = -amp[j] / d[j];
            if (cross > 0.0 && cross < step) {
                step = cross;
                vanish = j;
            }
        }
        if (vanish == r)
            throw std::runtime_error("caratheodory_prune: no zero crossing on a kernel walk");

        std::vector<std::size_t> next_active;
        std::vector<double> next_amp;
        for (std::size_t j = 0; j < r; ++j) {
            const double v = (j == vanish) ? 0.0 : amp[j] + step * d[j];
            if (std::abs(v) <= kZeroAmp * std::max(1.0, norm_inf(amp))) continue;
            next_active.push_back(active[j]);
            next_amp.push_back(v);
        }
        active.swap(next_active);
        amp.swap(next_amp);
    }

    FeatureInstance out;
    out.features = Mat(m, active.size());
    out.amplitudes = amp;
    out.target = inst.target;
    for (std::size_t j = 0; j < active.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) out.features(i, j) = inst.features(i, active[j]);
    return out;
}

namespace {

// Symmetric r x r matrices as vectors of length r(r+1)/2; the packing keeps
// <X, Delta> = row . packed with off-diagonal entries doubled in the row.
std::size_t sym_dim(std::size_t r) { return r * (r + 1) / 2; }

Mat unpack_sym(const std::vector<double>& v, std::size_t r) {
    Mat s(r, r);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            s(i, j) = v[idx];
            s(j, i) = v[idx];
            ++idx;
        }
    return s;
}

}  // namespace

PsdInstance psd_rank_reduce(const PsdInstance& inst) {
    const std::size_t n = inst.q.rows;
    const std::size_t m = inst.constraints.size();
    constexpr double kEigCut = 1e-11;

    Mat q = inst.q;
    for (int guard = 0; guard <= static_cast<int>(n) + 1; ++guard) {
        // Factor Q = V V^T keeping eigenvalues above the cut.
        const SymEig e = jacobi_eig(q);
        double amax = 0.0;
        for (double v : e.values) amax = std::max(amax, std::abs(v));
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < e.values.size(); ++i)
            if (e.values[i] > kEigCut * std::max(amax, 1e-300)) keep.push_back(i);
        const std::size_t r = keep.size();
        if (sym_dim(r) <= m) {
            // Re-assemble from the kept factor so tiny negative or trimmed
            // eigenvalues do not linger.
            break;
        }

        Mat factor(n, r);
        for (std::size_t j = 0; j < r; ++j) {
            const double s = std::sqrt(e.values[keep[j]]);
            for (std::size_t i = 0; i < n; ++i) factor(i, j) = s * e.vectors(i, keep[j]);
        }

        // Compressed constraints G_i = V^T Phi_i V; find symmetric Delta != 0
        // with <G_i, Delta> = 0 for all i. The packed system has sym_dim(r)
        // unknowns > m rows, so a kernel vector exists.
        Mat g(m, sym_dim(r));
        for (std::size_t i = 0; i < m; ++i) {
            const Mat gi = factor.transposed() * (inst.constraints[i] * factor);
            std::size_t idx = 0;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = a; b < r; ++b) {
                    g(i, idx) = (a == b) ? gi(a, b) : 2.0 * gi(a, b);
                    ++idx;
                }
        }
        const std::vector<double> packed = kernel_vector(g, nullptr);
        if (norm2(packed) < 1e-12)
            throw std::runtime_error("psd_rank_reduce: degenerate constraints, no direction");
        const Mat delta = unpack_sym(packed, r);

        // Largest-magnitude eigenvalue of Delta; t = -1/lambda keeps
        // I + t Delta PSD and annihilates that eigendirection.
        const SymEig de = jacobi_eig(delta);
        const double lo = de.values.front(), hi = de.values.back();
        const double lambda = (std::abs(lo) >= std::abs(hi)) ? lo : hi;
        if (std::abs(lambda) < 1e-14)
            throw std::runtime_error("psd_rank_reduce: zero direction eigenvalue");
        const double t = -1.0 / lambda;

        Mat core = Mat::identity(r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) core(i, j) += t * delta(i, j);
        q = factor * (core * factor.transposed());
        for (std::size_t i = 0; i < n; ++i)  // enforce exact symmetry
            for (std::size_t j = i + 1; j < n; ++j) {
                const double s = 0.5 * (q(i, j) + q(j, i));
                q(i, j) = s;
                q(j, i) = s;
            }

        // Feasibility drift control: least-norm correction of the residual
        // on the current factor span.
        std::vector<double> resid(m);
        for (std::size_t i = 0; i < m; ++i) resid[i] = inst.rhs[i] - mat_inner(inst.constraints[i], q);
        if (norm_inf(resid) > 0.0) {
            const std::vector<double> corr = least_squares(g, resid);
            const Mat cmat = unpack_sym(corr, r);
            const Mat adjust = factor * (cmat * factor.transposed());
            for (std::size_t i = 0; i < q.a.size(); ++i) q.a[i] += adjust.a[i];
        }
    }

    PsdInstance out;
    out.q = q;
    out.constraints = inst.constraints;
    out.rhs = inst.rhs;
    return out;
}

int l1_face_dim(const std::vector<double>& a, double tau, double tol) {
    if (tau <= 0.0) throw std::domain_error("l1_face_dim: tau must be positive");
    double nrm = 0.0;
    for (double v : a) nrm += std::abs(v);
    const double t = tol * std::max(1.0, tau);
    if (nrm > tau + t) throw std::domain_error("l1_face_dim: point outside the ball");
    if (nrm < tau - t) return static_cast<int>(a.size());
    int nonzeros = 0;
    for (double v : a)
        if (std::abs(v) > t) ++nonzeros;
    return nonzeros - 1;
}

int psd_face_dim(const Mat& q, double psd_tol, double rank_tol) {
    const SymEig e = jacobi_eig(q);
    double amax = 0.0;
    for (double v : e.values) amax = std::max(amax, std::abs(v));
    if (!e.values.empty() && e.values.front() < -psd_tol * std::max(1.0, amax))
        throw std::domain_error("psd_face_dim: matrix is not PSD");
    int r = 0;
    for (double v : e.values)
        if (v > rank_tol * amax) ++r;
    return r * (r + 1) / 2;
}

}  // namespace spikes
