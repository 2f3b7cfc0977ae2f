// bp_torus.hpp — Basis Pursuit for measures on the torus with the
// trigonometric system:
//
//   minimize |mu|(T)   subject to   moments(mu) = y,
//
// discretized on the uniform grid g_i = i/N and solved exactly as a dense
// LP. Grid artifacts (one true atom split across adjacent nodes) are merged
// by canonicalize with merge_radius (default 2/N); the optional polish step
// refines positions off the grid by coordinate-wise golden-section moves
// with least-squares amplitude refits. The LP dual becomes the trigonometric
// polynomial eta; when the recovered support admits an interpolating dual
// (eta(x_i) = sign(a_i), eta'(x_i) = 0) with a better certified objective
// bound, that refined dual is reported instead.
//
// The reported duality gap is measured against the continuous, Bernstein-
// corrected dual bound <p, y> / certified_sup_norm(eta), not the grid bound.

#pragma once

#include <cstdint>

#include "spikes/l1_lp.hpp"
#include "spikes/measures.hpp"

namespace spikes {

struct BpConfig {
    std::int64_t grid_size = 2048;  // N; must exceed 4 f_c
    double merge_radius = -1.0;     // negative: default 2/N
    double feas_tol = 1e-7;
    bool polish = true;
    std::int64_t dual_check_n = 0;  // samples for the certified bound; 0 = auto
};

struct BpResult {
    AtomicMeasure measure;
    TrigPolynomial dual;       // best certificate found (LP dual or refined)
    TrigPolynomial lp_dual;    // the raw basic dual of the grid LP
    double objective = 0.0;    // tv norm of the returned measure
    double duality_gap = 0.0;  // objective - certified dual bound
    double lp_objective = 0.0; // optimum of the grid LP
    int lp_pivots = 0;
};

BpResult solve_bp_grid(const MomentVector& y, const BpConfig& cfg);

// Off-grid refinement: coordinate-wise golden-section moves on each atom
// position with a least-squares amplitude refit after every move. While the
// moment residual exceeds feas_tol the moves descend the residual; once
// feasible they may only decrease the total variation. Atoms whose refitted
// amplitude becomes negligible are dropped when feasibility survives.
// Never returns anything worse than its input.
AtomicMeasure polish_atoms(const AtomicMeasure& mu, const MomentVector& y, int max_iter = 60,
                           double step_tol = 1e-10, double feas_tol = 1e-7);

// The LP dual vector as a trigonometric polynomial. At an optimum it
// satisfies ||eta||_inf <= 1 + tol on the grid and <p, y> = objective.
TrigPolynomial extract_dual(const L1Solution& sol, TrigSystem sys);

// Dual interpolation on a recovered support: least-squares solution of
// eta(x_i) = sign(a_i), eta'(x_i) = 0 (minimum-norm when underdetermined).
TrigPolynomial refine_dual(const AtomicMeasure& mu, TrigSystem sys);

// ||moments(mu) - y||_inf.
double moment_residual(const AtomicMeasure& mu, const MomentVector& y);

}  // namespace spikes
