// sparsify.hpp — constructive sparsification of feasible solutions.
//
// caratheodory_prune walks a feasible amplitude vector along kernel
// directions of the feature matrix, in the orientation that cannot increase
// the total variation, until the active columns are linearly independent.
// The output keeps a subset of the input atoms, reproduces the same target,
// and has at most m = rank(A) atoms.
//
// psd_rank_reduce applies the analogous walk on the semidefinite cone: while
// rank(Q) = r satisfies r(r+1)/2 > m, a nonzero symmetric direction Delta in
// the kernel of the compressed constraints is scaled by t = -1/lambda_max so
// that I + t Delta stays PSD and drops rank; the update Q <- V(I + t Delta)V^T
// preserves every constraint. The final rank obeys r(r+1)/2 <= m, the
// Barvinok-Pataki bound r <= (sqrt(8m+1)-1)/2.

#pragma once

#include <vector>

#include "spikes/linalg.hpp"

namespace spikes {

struct FeatureInstance {
    Mat features;                   // m x r, column i = feature vector of atom i
    std::vector<double> amplitudes; // length r
    std::vector<double> target;     // length m, A * a = target within feas_tol

    // Validates shapes and feasibility at construction tolerance.
    static FeatureInstance checked(Mat features, std::vector<double> amplitudes,
                                   std::vector<double> target, double feas_tol = 1e-8);
};

struct PsdInstance {
    Mat q;                     // n x n symmetric PSD
    std::vector<Mat> constraints;  // m symmetric n x n matrices
    std::vector<double> rhs;   // <constraints[i], q> = rhs[i]

    static PsdInstance checked(Mat q, std::vector<Mat> constraints, std::vector<double> rhs,
                               double feas_tol = 1e-8, double psd_tol = 1e-9);
};

// Requires all amplitudes nonzero after dropping exact zeros. Output:
// same target to 1e-9, total variation never larger (up to 1e-12), atom
// count at most m, atoms a subset of the input's.
FeatureInstance caratheodory_prune(const FeatureInstance& inst);

PsdInstance psd_rank_reduce(const PsdInstance& inst);

// Dimension of the minimal face of the scaled l1 ball {||a||_1 <= tau}
// containing a: n strictly inside, (#nonzeros - 1) on the boundary.
// Throws std::domain_error outside the ball.
int l1_face_dim(const std::vector<double>& a, double tau, double tol = 1e-9);

// Dimension r(r+1)/2 of the minimal face of the PSD cone containing Q
// (r = rank at rank_tol). Throws std::domain_error when Q is not PSD.
int psd_face_dim(const Mat& q, double psd_tol = 1e-9, double rank_tol = 1e-10);

// <X, Y> = sum_ij X_ij Y_ij for symmetric matrices.
double mat_inner(const Mat& x, const Mat& y);

// rank of Q at rank_tol (symmetric eigenvalue count).
int sym_rank(const Mat& q, double rank_tol = 1e-10);

}  // namespace spikes
