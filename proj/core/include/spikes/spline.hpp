// spline.hpp — total-variation spline fitting on [0, 1]:
//
//   minimize ||D^n u||_M   subject to   u(s_i) = y_i,
//
// over functions u whose n-th distributional derivative is an atomic
// measure. Such u are generalized splines
//
//   u(x) = sum_k a_k (x - x_k)_+^{n-1} / (n-1)!  +  P(x),   P in R_{n-1}[X],
//
// with D^n u = sum_k a_k delta_{x_k} and objective sum |a_k|. Knots are
// restricted to a uniform candidate grid; the polynomial part enters the LP
// as cost-free columns, so one l1_lp solve covers both. A vertex solution
// carries at most m - d knots, d being the rank of the polynomial block.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace spikes {

struct SplineKnot {
    double x = 0.0;
    double a = 0.0;  // nonzero in a solved model
};

struct SplineModel {
    int order = 1;                  // n >= 1: the derivative order being penalized
    std::vector<SplineKnot> knots;
    std::vector<double> poly;       // n coefficients of P, ascending powers
};

struct SplineProblem {
    int order = 1;
    std::vector<std::pair<double, double>> samples;  // (s_i, y_i), s_i distinct in [0, 1]
    std::int64_t knot_grid = 512;                    // N uniform candidate knots i/N
};

struct SplineSolution {
    SplineModel model;
    double objective = 0.0;    // sum |a_k|
    int poly_block_rank = 0;   // d, measured rank of the monomial columns
    int pivots = 0;
};

// Truncated power atom (x)_+^e / e! with (x)_+^0 = 1 for x >= 0.
double truncated_power(double x, int e);

SplineSolution solve_spline(const SplineProblem& prob);

double eval_spline(const SplineModel& model, double x);

// sum |a_k| = total variation of the n-th distributional derivative.
double knot_tv(const SplineModel& model);

}  // namespace spikes
