#include "spikes/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spikes {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroAmplitudeRel = 1e-12;

// Angle of the k-th harmonic at t, reduced before scaling by 2 pi so large
// products j * t never reach the trig functions.
double harmonic_angle(int j, double t) {
    return kTwoPi * TorusPoint::wrap(static_cast<double>(j) * t);
}
}  // namespace

double TorusPoint::wrap(double v) {
    double f = v - std::floor(v);
    if (f >= 1.0) f -= 1.0;  // std::floor rounding at the seam
    return f;
}

double TorusPoint::distance(TorusPoint a, TorusPoint b) {
    const double d = std::abs(a.value() - b.value());
    return std::min(d, 1.0 - d);
}

TrigSystem::TrigSystem(int cutoff) : fc_(cutoff) {
    if (cutoff < 1) throw std::invalid_argument("TrigSystem: cutoff must be >= 1");
}

MomentVector::MomentVector(TrigSystem sys, std::vector<double> values)
    : system(sys), y(std::move(values)) {
    if (y.size() != static_cast<std::size_t>(system.size()))
        throw std::invalid_argument("MomentVector: expected 2 f_c + 1 entries");
}

TrigPolynomial::TrigPolynomial(TrigSystem sys, std::vector<double> coeffs)
    : system(sys), p(std::move(coeffs)) {
    if (p.size() != static_cast<std::size_t>(system.size()))
        throw std::invalid_argument("TrigPolynomial: expected 2 f_c + 1 coefficients");
}

TrigPolynomial TrigPolynomial::zero(TrigSystem sys) {
    return TrigPolynomial(sys, std::vector<double>(sys.size(), 0.0));
}

double eval_basis(TrigSystem sys, int k, TorusPoint t) {
    if (k < 0 || k > 2 * sys.cutoff()) throw std::out_of_range("eval_basis: index out of range");
    if (k == 0) return 1.0;
    const int j = (k + 1) / 2;
    const double ang = harmonic_angle(j, t.value());
    return (k % 2 == 1) ? std::cos(ang) : std::sin(ang);
}

MomentVector moments(const AtomicMeasure& mu, TrigSystem sys) {
    std::vector<double> y(sys.size(), 0.0);
    for (const Atom& atom : mu.atoms()) {
        const double a = atom.amplitude;
        y[0] += a;
        for (int j = 1; j <= sys.cutoff(); ++j) {
            const double ang = harmonic_angle(j, atom.position.value());
            y[2 * j - 1] += a * std::cos(ang);
            y[2 * j] += a * std::sin(ang);
        }
    }
    return MomentVector(sys, std::move(y));
}

double tv_norm(const AtomicMeasure& mu) {
    const AtomicMeasure canon = canonicalize(mu, 0.0);
    double s = 0.0;
    for (const Atom& atom : canon.atoms()) s += std::abs(atom.amplitude);
    return s;
}

AtomicMeasure canonicalize(const AtomicMeasure& mu, double merge_radius) {
    if (merge_radius < 0.0) throw std::invalid_argument("canonicalize: merge_radius must be >= 0");

    std::vector<Atom> atoms = mu.atoms();

    // Single-linkage merging of clusters; repeat until every pair is
    // farther apart than merge_radius (merged positions can move).
    bool merged = true;
    while (merged && atoms.size() > 1) {
        merged = false;
        std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
            return a.position.value() < b.position.value();
        });
        std::vector<Atom> next;
        std::size_t i = 0;
        while (i < atoms.size()) {
            std::size_t j = i + 1;
            while (j < atoms.size() &&
                   TorusPoint::distance(atoms[j - 1].position, atoms[j].position) <= merge_radius)
                ++j;
            if (j - i == 1) {
                next.push_back(atoms[i]);
            } else {
                merged = true;
                // Amplitude-weighted circular mean via unit vectors; exactly
                // coincident clusters keep their position bit-for-bit.
                bool coincident = true;
                double cx = 0.0, sx = 0.0, amp = 0.0, wsum = 0.0;
                for (std::size_t k = i; k < j; ++k) {
                    const double w = std::abs(atoms[k].amplitude);
                    const double ang = kTwoPi * atoms[k].position.value();
                    cx += w * std::cos(ang);
                    sx += w * std::sin(ang);
                    amp += atoms[k].amplitude;
                    wsum += w;
                    coincident = coincident && atoms[k].position.value() == atoms[i].position.value();
                }
                TorusPoint pos = atoms[i].position;
                if (!coincident && wsum > 0.0 && (cx != 0.0 || sx != 0.0))
                    pos = TorusPoint(std::atan2(sx, cx) / kTwoPi);
                next.push_back(Atom{pos, amp});
            }
            i = j;
        }
        // Seam cluster: first and last survivors may still touch across 0.
        if (next.size() > 1 &&
            TorusPoint::distance(next.front().position, next.back().position) <= merge_radius) {
            Atom last = next.back();
            next.pop_back();
            Atom& first = next.front();
            const double wf = std::abs(first.amplitude), wl = std::abs(last.amplitude);
            double cx = wf * std::cos(kTwoPi * first.position.value()) +
                        wl * std::cos(kTwoPi * last.position.value());
            double sx = wf * std::sin(kTwoPi * first.position.value()) +
                        wl * std::sin(kTwoPi * last.position.value());
            if (wf + wl > 0.0 && (cx != 0.0 || sx != 0.0))
                first.position = TorusPoint(std::atan2(sx, cx) / kTwoPi);
            first.amplitude += last.amplitude;
            merged = true;
        }
        atoms.swap(next);
    }

    double amax = 0.0;
    for (const Atom& a : atoms) amax = std::max(amax, std::abs(a.amplitude));
    const double cut = kZeroAmplitudeRel * amax;
    std::vector<Atom> kept;
    kept.reserve(atoms.size());
    for (const Atom& a : atoms)
        if (std::abs(a.amplitude) > cut) kept.push_back(a);
    return AtomicMeasure(std::move(kept));
}

double eval_trig_poly(const TrigPolynomial& eta, TorusPoint t) {
    double s = eta.p[0];
    for (int j = 1; j <= eta.system.cutoff(); ++j) {
        const double ang = harmonic_angle(j, t.value());
        s += eta.p[2 * j - 1] * std::cos(ang) + eta.p[2 * j] * std::sin(ang);
    }
    return s;
}

ComplexMoments complex_moments(const MomentVector& y) {
    const int fc = y.system.cutoff();
    ComplexMoments out{fc, std::vector<std::complex<double>>(fc + 1)};
    out.c[0] = {y.y[0], 0.0};
    for (int j = 1; j <= fc; ++j) out.c[j] = {y.y[2 * j - 1], -y.y[2 * j]};
    return out;
}

double pairing(const TrigPolynomial& eta, const MomentVector& y) {
    if (eta.system.cutoff() != y.system.cutoff())
        throw std::invalid_argument("pairing: mismatched systems");
    double s = 0.0;
    for (std::size_t k = 0; k < eta.p.size(); ++k) s += eta.p[k] * y.y[k];
    return s;
}

}  // namespace spikes
