#include "spikes/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spikes/linalg.hpp"

namespace spikes {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRootTol = 1e-6;  // |1 - |z|| acceptance for unit-circle roots
constexpr double kAmpTol = 1e-8;
constexpr double kMomentResidualTol = 1e-8;

// Least-squares amplitudes for fixed positions against the real moment
// system, optionally refitting after dropping near-zero candidates.
std::vector<double> fit_amplitudes(const std::vector<TorusPoint>& pos, const MomentVector& y) {
    const int m = y.system.size();
    Mat a(static_cast<std::size_t>(m), pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j)
        for (int k = 0; k < m; ++k)
            a(static_cast<std::size_t>(k), j) = eval_basis(y.system, k, pos[j]);
    return least_squares(a, y.y);
}
}  // namespace

HermitianToeplitz build_toeplitz(const MomentVector& y) {
    const ComplexMoments cm = complex_moments(y);
    const int fc = cm.cutoff;
    HermitianToeplitz t;
    t.cutoff = fc;
    const std::size_t n = t.size();
    t.t.assign(n * n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t.t[i * n + j] = (j >= i) ? cm.c[j - i] : std::conj(cm.c[i - j]);
    return t;
}

MomentDiagnosis diagnose(const HermitianToeplitz& t, double psd_tol, double rank_tol) {
    if (psd_tol <= 0.0 || rank_tol <= 0.0)
        throw std::invalid_argument("diagnose: tolerances must be positive");
    const HermEig eig = hermitian_eig(t.t, t.size(), 1e-14);
    MomentDiagnosis d;
    d.eigenvalues = eig.values;
    double amax = 0.0;
    for (double v : eig.values) amax = std::max(amax, std::abs(v));
    d.rank = 0;
    for (double v : eig.values)
        if (v > rank_tol * amax) ++d.rank;
    d.is_psd = eig.values.empty() || eig.values.front() >= -psd_tol * std::max(1.0, amax);
    return d;
}

MomentRecovery recover_nonneg(const MomentVector& y) {
    const HermitianToeplitz t = build_toeplitz(y);
    MomentRecovery out;
    out.diagnosis = diagnose(t);
    if (!out.diagnosis.is_psd) {
        out.branch = MomentBranch::no_solution;
        return out;
    }
    const int fc = t.cutoff;
    const int r = out.diagnosis.rank;
    if (r == 0) {  // y = 0: the empty measure
        out.branch = MomentBranch::recovered;
        out.measure = AtomicMeasure();
        return out;
    }
    if (r > fc) {
        out.branch = MomentBranch::nonunique;
        return out;
    }

    // Pisarenko: kernel polynomial from the eigenvector of the smallest
    // eigenvalue; atoms sit at its unit-circle roots.
    const HermEig eig = hermitian_eig(t.t, t.size(), 1e-14);
    const std::vector<std::complex<double>>& u = eig.vectors.front();
    const std::vector<std::complex<double>> roots =
        polynomial_roots(std::vector<std::complex<double>>(u.begin(), u.end()));

    // Kernel orthogonality reads q(e^{-2 pi i x_j}) = 0, so a root's
    // position is the negated argument.
    std::vector<TorusPoint> candidates;
    for (const auto& z : roots) {
        if (std::abs(1.0 - std::abs(z)) > kRootTol) continue;
        const TorusPoint x(-std::atan2(z.imag(), z.real()) / kTwoPi);
        bool dup = false;
        for (const TorusPoint& c : candidates)
            if (TorusPoint::distance(c, x) <= kRootTol) dup = true;
        if (!dup) candidates.push_back(x);
    }
    if (static_cast<int>(candidates.size()) < r) {
        std::ostringstream msg;
        msg << "recover_nonneg: expected " << r << " unit-circle roots, found "
            << candidates.size() << "; root moduli:";
        for (const auto& z : roots) msg << " " << std::abs(z);
        throw std::runtime_error(msg.str());
    }

    // Keep the candidates the moment system actually charges.
    std::vector<double> amps = fit_amplitudes(candidates, y);
    double amax = 0.0;
    for (double a : amps) amax = std::max(amax, std::abs(a));
    std::vector<TorusPoint> support;
    for (std::size_t j = 0; j < candidates.size(); ++j)
        if (std::abs(amps[j]) > kAmpTol * std::max(1.0, amax)) support.push_back(candidates[j]);
    if (static_cast<int>(support.size()) != r) {
        std::ostringstream msg;
        msg << "recover_nonneg: " << support.size() << " charged unit-circle roots, rank is "
            << r << "; root moduli:";
        for (const auto& z : roots) msg << " " << std::abs(z);
        throw std::runtime_error(msg.str());
    }
    if (support.size() < candidates.size()) amps = fit_amplitudes(support, y);

    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < support.size(); ++j) {
        if (amps[j] < -kAmpTol)
            throw std::runtime_error("recover_nonneg: negative amplitude beyond tolerance");
        atoms.push_back(Atom{support[j], std::max(amps[j], 0.0)});
    }
    AtomicMeasure mu{std::move(atoms)};

    const MomentVector back = moments(mu, y.system);
    double resid = 0.0;
    for (std::size_t k = 0; k < y.y.size(); ++k)
        resid = std::max(resid, std::abs(back.y[k] - y.y[k]));
    const double yscale = std::max(1.0, norm_inf(y.y));
    if (resid > kMomentResidualTol * yscale)
        throw std::runtime_error("recover_nonneg: recovered measure does not reproduce moments");

    out.branch = MomentBranch::recovered;
    out.measure = std::move(mu);
    return out;
}

AtomicMeasure recover_charging(const MomentVector& y, TorusPoint t0) {
    const HermitianToeplitz t = build_toeplitz(y);
    const MomentDiagnosis d = diagnose(t);
    if (!d.is_psd || d.rank != static_cast<int>(t.size()))
        throw std::domain_error("recover_charging: T(c) must be PSD and invertible");

    // Christoffel mass at t0: rho = 1 / (v(t0)^H T^{-1} v(t0)) with
    // v(t) = (1, e^{2 pi i t}, ..., e^{2 pi i f_c t}).
    const std::size_t n = t.size();
    std::vector<std::complex<double>> v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = std::polar(1.0, kTwoPi * TorusPoint::wrap(static_cast<double>(k) * t0.value()));
    const std::vector<std::complex<double>> w = hermitian_solve(t.t, n, v);
    std::complex<double> quad{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) quad += std::conj(v[k]) * w[k];
    const double rho = 1.0 / quad.real();

    MomentVector rest = y;
    const MomentVector spike = moments(AtomicMeasure({Atom{t0, rho}}), y.system);
    for (std::size_t k = 0; k < rest.y.size(); ++k) rest.y[k] -= spike.y[k];

    const MomentRecovery rec = recover_nonneg(rest);
    if (rec.branch != MomentBranch::recovered)
        throw std::runtime_error("recover_charging: residual moment problem not recoverable");

    std::vector<Atom> atoms = rec.measure.atoms();
    atoms.push_back(Atom{t0, rho});
    return canonicalize(AtomicMeasure(std::move(atoms)), 0.0);
}

}  // namespace spikes
