// measures.hpp — atomic measures on the torus T = R/Z, the real trigonometric
// measurement system, and trigonometric polynomials.
//
// The measurement system of cutoff f_c consists of the m = 2 f_c + 1 basis
// functions
//   phi_0(t) = 1,  phi_{2j-1}(t) = cos(2 pi j t),  phi_{2j}(t) = sin(2 pi j t),
// and the moment vector of a measure mu is y_k = integral of phi_k d mu.
// All types are immutable values after construction and every operation is a
// pure function; everything here is safe to use from concurrent contexts.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spikes {

// Point on the torus, stored by its canonical representative in [0, 1).
class TorusPoint {
public:
    TorusPoint() = default;
    explicit TorusPoint(double v) : x_(wrap(v)) {}

    double value() const { return x_; }

    TorusPoint operator+(TorusPoint o) const { return TorusPoint(x_ + o.x_); }
    TorusPoint operator-() const { return TorusPoint(-x_); }

    // d(x, y) = min(|x - y|, 1 - |x - y|), always in [0, 1/2].
    static double distance(TorusPoint a, TorusPoint b);

    // Canonical representative of v mod 1 in [0, 1).
    static double wrap(double v);

private:
    double x_ = 0.0;
};

struct Atom {
    TorusPoint position;
    double amplitude = 0.0;
};

// Finite signed atomic measure  sum_i a_i delta_{x_i}.
// A measure is *canonical* when all amplitudes are nonzero and all positions
// are pairwise distinct; canonicalize() establishes that form.
class AtomicMeasure {
public:
    AtomicMeasure() = default;
    explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

private:
    std::vector<Atom> atoms_;
};

// Trigonometric measurement system with frequency cutoff f_c >= 1 and
// m = 2 f_c + 1 basis functions indexed 0 .. 2 f_c.
class TrigSystem {
public:
    explicit TrigSystem(int cutoff);

    int cutoff() const { return fc_; }
    int size() const { return 2 * fc_ + 1; }

private:
    int fc_ = 1;
};

struct MomentVector {
    TrigSystem system;
    std::vector<double> y;  // length system.size()

    MomentVector(TrigSystem sys, std::vector<double> values);
};

// eta = sum_k p_k phi_k, the dual-variable object.
struct TrigPolynomial {
    TrigSystem system;
    std::vector<double> p;  // length system.size()

    TrigPolynomial(TrigSystem sys, std::vector<double> coeffs);
    static TrigPolynomial zero(TrigSystem sys);
};

// Complex moments c_0 = y_0 (real), c_j = y_{2j-1} - i y_{2j}.
struct ComplexMoments {
    int cutoff;
    std::vector<std::complex<double>> c;  // length cutoff + 1
};

// phi_k(t); throws std::out_of_range unless 0 <= k <= 2 f_c.
double eval_basis(TrigSystem sys, int k, TorusPoint t);

// y_k = sum_i a_i phi_k(x_i); linear in mu.
MomentVector moments(const AtomicMeasure& mu, TrigSystem sys);

// Total variation |mu|(T) = sum |a_i| of the canonical form (exactly
// coincident positions cancel first).
double tv_norm(const AtomicMeasure& mu);

// Merges clusters of atoms with pairwise torus distance <= merge_radius at
// their amplitude-weighted circular mean, then drops amplitudes below
// 1e-12 relative to the largest. Output positions are pairwise farther
// apart than merge_radius.
AtomicMeasure canonicalize(const AtomicMeasure& mu, double merge_radius);

double eval_trig_poly(const TrigPolynomial& eta, TorusPoint t);

ComplexMoments complex_moments(const MomentVector& y);

// <p, y> (both on the same system).
double pairing(const TrigPolynomial& eta, const MomentVector& y);

}  // namespace spikes
