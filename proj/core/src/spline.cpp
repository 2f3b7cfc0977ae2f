#include "spikes/spline.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "spikes/l1_lp.hpp"

namespace spikes {

double truncated_power(double x, int e) {
    if (e == 0) return x >= 0.0 ? 1.0 : 0.0;
    if (x <= 0.0) return 0.0;
    double fact = 1.0;
    for (int k = 2; k <= e; ++k) fact *= k;
    return std::pow(x, e) / fact;
}

SplineSolution solve_spline(const SplineProblem& prob) {
    const int n = prob.order;
    if (n < 1) throw std::invalid_argument("solve_spline: order must be >= 1");
    const std::size_t m = prob.samples.size();
    if (m == 0) throw std::invalid_argument("solve_spline: no samples");
    {
        std::set<double> seen;
        for (const auto& [s, v] : prob.samples) {
            if (!(s >= 0.0 && s <= 1.0))
                throw std::invalid_argument("solve_spline: samples must lie in [0, 1]");
            if (!seen.insert(s).second)
                throw std::invalid_argument("solve_spline: sample positions must be distinct");
        }
    }
    const std::int64_t grid = prob.knot_grid;
    if (grid < 2) throw std::invalid_argument("solve_spline: knot grid too small");

    // Costed knot columns (s - x_k)_+^{n-1}/(n-1)! followed by the free
    // monomial block s^j, j < n.
    const std::size_t n_knots = static_cast<std::size_t>(grid);
    L1Problem lp;
    lp.A = Mat(m, n_knots + static_cast<std::size_t>(n));
    lp.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = prob.samples[i].first;
        lp.y[i] = prob.samples[i].second;
        for (std::size_t k = 0; k < n_knots; ++k) {
            const double xk = static_cast<double>(k) / static_cast<double>(grid);
            lp.A(i, k) = truncated_power(s - xk, n - 1);
        }
        for (int j = 0; j < n; ++j)
            lp.A(i, n_knots + static_cast<std::size_t>(j)) = std::pow(s, j);
    }
    for (int j = 0; j < n; ++j) lp.free_cols.push_back(n_knots + static_cast<std::size_t>(j));

    // Measured rank of the polynomial block (= dim Phi(ker D^n)).
    Mat poly_block(m, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            poly_block(i, static_cast<std::size_t>(j)) = std::pow(prob.samples[i].first, j);
    const Svd svd = jacobi_svd(poly_block);
    int d = 0;
    const double smax = svd.singular_values.empty() ? 0.0 : svd.singular_values[0];
    for (double s : svd.singular_values)
        if (s > 1e-10 * std::max(smax, 1e-300)) ++d;

    const L1Solution sol = solve_min_l1(lp);
    if (sol.status != LpStatus::optimal)
        throw std::runtime_error("solve_spline: interpolation LP failed");

    SplineSolution out;
    out.model.order = n;
    out.model.poly.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        out.model.poly[static_cast<std::size_t>(j)] = sol.a[n_knots + static_cast<std::size_t>(j)];
    // Basic variables below the solve tolerance are rounding noise, not knots.
    double yscale = 1.0;
    for (double v : lp.y) yscale = std::max(yscale, std::abs(v));
    for (std::size_t k = 0; k < n_knots; ++k)
        if (std::abs(sol.a[k]) > 1e-9 * yscale)
            out.model.knots.push_back(
                SplineKnot{static_cast<double>(k) / static_cast<double>(grid), sol.a[k]});
    out.objective = knot_tv(out.model);
    out.poly_block_rank = d;
    out.pivots = sol.pivots;
    return out;
}

double eval_spline(const SplineModel& model, double x) {
    double u = 0.0;
    for (const SplineKnot& k : model.knots) u += k.a * truncated_power(x - k.x, model.order - 1);
    double xp = 1.0;
    for (double c : model.poly) {
        u += c * xp;
        xp *= x;
    }
    return u;
}

double knot_tv(const SplineModel& model) {
    double s = 0.0;
    for (const SplineKnot& k : model.knots) s += std::abs(k.a);
    return s;
}

}  // namespace spikes
