#include "spikes/two_spike.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spikes {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double cot_pi(double x) {
    const double frac = TorusPoint::wrap(x);
    const double s = std::sin(kPi * frac);
    if (std::abs(s) < 1e-14) throw std::domain_error("cot_pi: argument at the pole");
    return std::cos(kPi * frac) / s;
}

std::vector<TorusPoint> comb_positions(int fc) {
    std::vector<TorusPoint> t;
    t.reserve(2 * static_cast<std::size_t>(fc));
    for (int j = -fc; j < fc; ++j)
        t.emplace_back(1.0 / (4.0 * fc) + static_cast<double>(j) / (2.0 * fc));
    return t;
}

std::pair<AtomicMeasure, TrigPolynomial> oracle_solution(int fc, double h) {
    if (fc < 1) throw std::domain_error("oracle_solution: fc must be >= 1");
    if (!(h > 0.0 && h < 1.0 / (2.0 * fc)))
        throw std::domain_error("oracle_solution: h must lie in (0, 1/(2 fc))");

    const double scale = std::cos(kPi * h * fc) / (2.0 * fc);
    std::vector<Atom> atoms;
    atoms.reserve(2 * static_cast<std::size_t>(fc));
    int j = -fc;
    for (const TorusPoint& t : comb_positions(fc)) {
        const double tj = 1.0 / (4.0 * fc) + static_cast<double>(j) / (2.0 * fc);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const double a = sign * scale * (cot_pi(tj - h / 2.0) - cot_pi(tj + h / 2.0));
        atoms.push_back(Atom{t, a});
        ++j;
    }

    TrigSystem sys(fc);
    std::vector<double> p(sys.size(), 0.0);
    p.back() = 1.0;  // eta(t) = sin(2 pi f_c t)
    return {AtomicMeasure(std::move(atoms)), TrigPolynomial(sys, std::move(p))};
}

AtomicMeasure oracle_boundary(int fc) {
    if (fc < 1) throw std::domain_error("oracle_boundary: fc must be >= 1");
    const double half = 1.0 / (4.0 * fc);
    return AtomicMeasure({Atom{TorusPoint(half), 1.0}, Atom{TorusPoint(-half), -1.0}});
}

std::complex<double> dirichlet_f_sum(double x, int fc) {
    std::complex<double> s{0.0, 0.0};
    for (int k = -fc; k < fc; ++k) {
        const double ang = kTwoPi * TorusPoint::wrap(static_cast<double>(k) * x);
        s += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s / (2.0 * fc);
}

DirichletValue dirichlet_f(double x, int fc) {
    if (fc < 1) throw std::domain_error("dirichlet_f: fc must be >= 1");
    const double frac = TorusPoint::wrap(x);
    if (std::abs(std::sin(kPi * frac)) < 1e-14)
        return {dirichlet_f_sum(x, fc), false};
    const double s = std::sin(kTwoPi * TorusPoint::wrap(static_cast<double>(fc) * x)) / (2.0 * fc);
    return {std::complex<double>(s * cot_pi(x), -s), true};
}

std::vector<double> amplitudes_via_dft(const MomentVector& y) {
    const int fc = y.system.cutoff();
    const ComplexMoments cm = complex_moments(y);

    // c_k for k = -f_c .. f_c - 1 with c_{-k} = conj(c_k).
    auto c_at = [&](int k) -> std::complex<double> {
        return k >= 0 ? cm.c[static_cast<std::size_t>(k)]
                      : std::conj(cm.c[static_cast<std::size_t>(-k)]);
    };

    std::vector<double> a;
    a.reserve(2 * static_cast<std::size_t>(fc));
    double max_imag = 0.0;
    for (int l = -fc; l < fc; ++l) {
        const double tl = 1.0 / (4.0 * fc) + static_cast<double>(l) / (2.0 * fc);
        std::complex<double> s{0.0, 0.0};
        for (int k = -fc; k < fc; ++k) {
            const double ang = kTwoPi * TorusPoint::wrap(static_cast<double>(k) * tl);
            s += std::complex<double>(std::cos(ang), std::sin(ang)) * c_at(k);
        }
        s /= 2.0 * fc;
        max_imag = std::max(max_imag, std::abs(s.imag()));
        a.push_back(s.real());
    }
    if (max_imag > 1e-10)
        throw std::domain_error("amplitudes_via_dft: imaginary residue too large; "
                                "moments are inconsistent with a real comb on this grid");
    return a;
}

}  // namespace spikes
