// two_spike.hpp — closed-form ground truth for the two-spike instance.
//
// For y = moments of delta_{h/2} - delta_{-h/2} with 0 < h < 1/(2 f_c), the
// minimum total-variation measure matching y is a signed Dirac comb on the
// equispaced grid t_j = 1/(4 f_c) + j/(2 f_c), j = -f_c .. f_c - 1, with
// amplitudes
//   a_j = (-1)^j cos(pi h f_c)/(2 f_c)
//         * ( cot(pi (t_j - h/2)) - cot(pi (t_j + h/2)) ),
// and the optimal dual polynomial is eta(t) = sin(2 pi f_c t), coefficient
// vector p = (0, ..., 0, 1). At the boundary h = 1/(2 f_c) the comb
// degenerates to delta_{h/2} - delta_{-h/2} itself.
//
// amplitudes_via_dft() recovers the same amplitudes by inverting
//   sum_j a_j exp(-2 pi i k t_j) = c_k   (k = -f_c .. f_c - 1)
// on the shifted grid with a direct inverse DFT — an independent path used
// to cross-check the closed form.

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "spikes/measures.hpp"

namespace spikes {

// Comb positions t_j for j = -f_c .. f_c - 1, wrapped into [0, 1).
std::vector<TorusPoint> comb_positions(int fc);

// Closed-form optimal pair (measure, dual) for 0 < h < 1/(2 f_c).
// Throws std::domain_error when h is out of range.
std::pair<AtomicMeasure, TrigPolynomial> oracle_solution(int fc, double h);

// Exact recovery at the boundary h = 1/(2 f_c): the measure
// delta_{h/2} - delta_{-h/2} itself.
AtomicMeasure oracle_boundary(int fc);

// f(x) = (1/(2 f_c)) sum_{k=-f_c}^{f_c-1} exp(2 pi i k x)
//      = sin(2 pi f_c x)/(2 f_c) * (cot(pi x) - i).
// The closed form has a pole-looking factor at x = 0 mod 1 where the sum is
// actually finite; there the value comes from the sum and closed_form_valid
// is false.
struct DirichletValue {
    std::complex<double> value;
    bool closed_form_valid = true;
};

DirichletValue dirichlet_f(double x, int fc);

// Direct 2 f_c-term summation (the reference path for dirichlet_f).
std::complex<double> dirichlet_f_sum(double x, int fc);

// Amplitudes a_j (j = -f_c .. f_c - 1, in that order) on the comb grid,
// recovered from the moments by the shifted inverse DFT. Throws
// std::domain_error when the imaginary residue exceeds 1e-10 (y is not the
// moment vector of a real comb on this grid).
std::vector<double> amplitudes_via_dft(const MomentVector& y);

// cot(pi x) with the argument reduced to (0, 1); throws std::domain_error
// within 1e-14 of the pole.
double cot_pi(double x);

}  // namespace spikes
