// certificate.hpp — rigorous optimality checks for candidate primal-dual
// pairs of the measure recovery problem.
//
// A trigonometric polynomial eta with ||eta||_inf <= 1 certifies a feasible
// measure mu as optimal when eta equals +1 on the positive support and -1 on
// the negative support, and <p, y> matches tv(mu). certified_sup_norm turns a
// finite grid maximum M into a true bound through the Bernstein inequality
// ||eta'||_inf <= 2 pi f_c ||eta||_inf:
//
//   ||eta||_inf <= M / (1 - pi f_c / N)   for N > pi f_c samples.

#pragma once

#include <cstdint>

#include "spikes/measures.hpp"

namespace spikes {

enum class Verdict { certified, violated, inconclusive };

struct CertificateReport {
    double sup_norm_bound = 0.0;      // certified upper bound on ||eta||_inf
    double extremality_max_err = 0.0; // max_i |eta(x_i) - sign(a_i)|
    double gap = 0.0;                 // tv(mu) - <p, y>
    Verdict verdict = Verdict::inconclusive;
};

// Certified upper bound on ||eta||_inf from N_check uniform samples.
// Requires N_check > pi * f_c (throws std::invalid_argument otherwise).
double certified_sup_norm(const TrigPolynomial& eta, std::int64_t n_check);

// Grid maximum without the Bernstein correction (diagnostic).
double grid_sup_norm(const TrigPolynomial& eta, std::int64_t n_check);

// max over atoms of |eta(x_i) - sign(a_i)|; 0 for the empty measure.
// Expects mu canonical.
double extremality_error(const TrigPolynomial& eta, const AtomicMeasure& mu);

// tv(mu) - <p, y>; nonnegative up to tolerance whenever eta is admissible
// and mu reproduces y.
double duality_gap(const AtomicMeasure& mu, const TrigPolynomial& eta, const MomentVector& y);

// Aggregates the three checks. "certified" is a sufficient optimality
// certificate for mu; "violated" means a check failed beyond what the grid
// correction could explain; "inconclusive" covers the rest.
CertificateReport certify(const AtomicMeasure& mu, const TrigPolynomial& eta,
                          const MomentVector& y, double tol = 1e-3,
                          std::int64_t n_check = 0 /* 0 = 4096 * f_c */);

}  // namespace spikes
