// l1_lp.hpp — exact dense linear programming core:
//
//   minimize   sum_{k not free} |a_k|   subject to   A a = y,
//
// solved as a split-variable LP (a = a+ - a-) by two-phase primal simplex.
// Entering variables are picked by most negative reduced cost; a streak of
// degenerate pivots switches the scan to Bland's lowest-index order, whose
// anti-cycling guarantee then applies. The solver returns a vertex (basic)
// solution together with the dual vector p of the final basis, which
// satisfies |A^T p|_k <= 1 + tol on costed columns, (A^T p)_k = 0 +- tol on
// free columns, and <p, y> = objective +- tol at an optimum.
//
// The returned vertex of a non-unique solution set is pivot-rule dependent;
// identical inputs produce bit-identical outputs.

#pragma once

#include <vector>

#include "spikes/linalg.hpp"

namespace spikes {

struct L1Problem {
    Mat A;                              // m x n, finite entries
    std::vector<double> y;              // length m
    std::vector<std::size_t> free_cols; // columns with zero l1 cost
};

enum class LpStatus { optimal, infeasible, unbounded };

struct L1Solution {
    std::vector<double> a;     // length n
    std::vector<double> dual;  // length m
    double objective = 0.0;    // sum of |a_k| over costed columns
    LpStatus status = LpStatus::optimal;
    int pivots = 0;
};

// tol > 0: absolute residual tolerance, scaled by ||y||_inf when that
// exceeds one. Throws std::invalid_argument on malformed input.
L1Solution solve_min_l1(const L1Problem& prob, double tol = 1e-9);

struct DualResiduals {
    double feas_inf = 0.0;  // ||A a - y||_inf
    double dual_inf = 0.0;  // max(0, ||A^T p||_inf - 1) over costed columns
    double gap = 0.0;       // |objective - <p, y>|
};

// Requires sol.status == optimal.
DualResiduals dual_residuals(const L1Problem& prob, const L1Solution& sol);

}  // namespace spikes
