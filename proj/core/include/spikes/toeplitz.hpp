// toeplitz.hpp — the truncated trigonometric moment problem for nonnegative
// measures.
//
// From the real moments y the complex sequence c_j = y_{2j-1} - i y_{2j}
// fills the (f_c + 1) x (f_c + 1) Hermitian Toeplitz matrix T(c). A
// nonnegative measure with moments y exists iff T(c) is positive
// semidefinite; with r = rank T(c) <= f_c the measure is unique and carries
// exactly r atoms (recovered here by Pisarenko: unit-circle roots of a
// kernel polynomial of T). When T(c) is invertible the solution set is
// infinite; recover_charging() constructs the member placing maximal mass
// rho = 1 / (v(t0)^H T^{-1} v(t0)) on a prescribed point t0.

#pragma once

#include <complex>
#include <vector>

#include "spikes/measures.hpp"

namespace spikes {

struct HermitianToeplitz {
    int cutoff = 1;                        // matrix size is cutoff + 1
    std::vector<std::complex<double>> t;   // row-major, Hermitian

    std::size_t size() const { return static_cast<std::size_t>(cutoff) + 1; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
        return t[i * size() + j];
    }
};

struct MomentDiagnosis {
    bool is_psd = false;
    int rank = 0;
    std::vector<double> eigenvalues;  // ascending
};

enum class MomentBranch { recovered, nonunique, no_solution };

struct MomentRecovery {
    MomentBranch branch = MomentBranch::no_solution;
    AtomicMeasure measure;      // meaningful when branch == recovered
    MomentDiagnosis diagnosis;
};

HermitianToeplitz build_toeplitz(const MomentVector& y);

// Full Hermitian eigendecomposition by cyclic Jacobi on the real embedding;
// rank counts eigenvalues above rank_tol * max|lambda| and is_psd tests the
// smallest eigenvalue against -psd_tol * max(1, max|lambda|).
MomentDiagnosis diagnose(const HermitianToeplitz& t, double psd_tol = 1e-10,
                         double rank_tol = 1e-10);

// Branches on the Caratheodory-Toeplitz structure of T(c):
//   not PSD            -> no_solution
//   rank r <= f_c      -> the unique r-atom nonnegative measure
//   rank f_c + 1       -> nonunique
// Throws std::runtime_error when root extraction cannot isolate exactly r
// unit-circle support points (clustered atoms beyond resolution).
MomentRecovery recover_nonneg(const MomentVector& y);

// Requires T(c) PSD and invertible (throws std::domain_error otherwise).
// Returns the f_c + 1 atom solution charging t0 with the Christoffel mass.
AtomicMeasure recover_charging(const MomentVector& y, TorusPoint t0);

}  // namespace spikes
