#include "spikes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spikes {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("Mat multiply: shape mismatch");
    Mat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

std::vector<double> operator*(const Mat& x, const std::vector<double>& v) {
    if (x.cols != v.size()) throw std::invalid_argument("Mat * vec: shape mismatch");
    std::vector<double> r(x.rows, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) s += x(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

std::vector<double> mul_transpose(const Mat& x, const std::vector<double>& v) {
    if (x.rows != v.size()) throw std::invalid_argument("Mat^T * vec: shape mismatch");
    std::vector<double> r(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (std::size_t j = 0; j < x.cols; ++j) r[j] += x(i, j) * vi;
    }
    return r;
}

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

LuFactors lu_factor(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("lu_factor: square matrix required");
    const std::size_t n = m.rows;
    LuFactors f{m, std::vector<std::size_t>(n), false};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

    double amax = 0.0;
    for (double x : m.a) amax = std::max(amax, std::abs(x));
    const double tiny = 1e-14 * std::max(amax, 1.0);

    Mat& lu = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best <= tiny) { f.singular = true; continue; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        const double d = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = lu(i, k) / d;
            lu(i, k) = l;
            if (l == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
        }
    }
    return f;
}

std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b) {
    const std::size_t n = f.lu.rows;
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        const double d = f.lu(ii, ii);
        x[ii] = (d != 0.0) ? x[ii] / d : 0.0;
    }
    return x;
}

std::vector<double> lu_solve_transposed(const LuFactors& f, const std::vector<double>& b) {
    // A^T x = b  with PA = LU:  A^T = U^T L^T P, solve U^T y = b, L^T z = y,
    // then undo the permutation.
    const std::size_t n = f.lu.rows;
    if (b.size() != n) throw std::invalid_argument("lu_solve_transposed: size mismatch");
    std::vector<double> y(b);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) y[i] -= f.lu(j, i) * y[j];
        const double d = f.lu(i, i);
        y[i] = (d != 0.0) ? y[i] / d : 0.0;
    }
    for (std::size_t ii = n; ii-- > 0;)
        for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= f.lu(j, ii) * y[j];
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = y[i];
    return x;
}

Mat lu_inverse(const LuFactors& f) {
    const std::size_t n = f.lu.rows;
    Mat inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        std::vector<double> col = lu_solve(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

SymEig jacobi_eig(const Mat& sym, double off_tol, int max_sweeps) {
    if (sym.rows != sym.cols) throw std::invalid_argument("jacobi_eig: square matrix required");
    const std::size_t n = sym.rows;
    Mat a = sym;
    Mat v = Mat::identity(n);

    double fro = 0.0;
    for (double x : a.a) fro += x * x;
    fro = std::sqrt(fro);
    const double stop = off_tol * std::max(fro, 1e-300);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 0.0) continue;
                const double diff = a(q, q) - a(p, p);
                double t;
                if (std::abs(apq) < 1e-300 * std::abs(diff)) {
                    t = apq / diff;
                } else {
                    const double theta = diff / (2.0 * apq);
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = a(i, p), aiq = a(i, q);
                        a(i, p) = aip - s * (aiq + tau * aip);
                        a(p, i) = a(i, p);
                        a(i, q) = aiq + s * (aip - tau * aiq);
                        a(q, i) = a(i, q);
                    }
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip - s * (viq + tau * vip);
                    v(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    SymEig out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    out.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = diag[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

namespace {

// Real symmetric embedding of a Hermitian matrix H = A + iB:
//   M = [[A, -B], [B, A]],  M (p; q) = lambda (p; q)  <=>  H (p + iq) = lambda (p + iq).
Mat hermitian_embedding(const std::vector<std::complex<double>>& h, std::size_t n) {
    if (h.size() != n * n) throw std::invalid_argument("hermitian matrix: size mismatch");
    Mat m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h[i * n + j].real();
            const double im = h[i * n + j].imag();
            m(i, j) = re;
            m(n + i, n + j) = re;
            m(i, n + j) = -im;
            m(n + i, j) = im;
        }
    return m;
}

}  // namespace

HermEig hermitian_eig(const std::vector<std::complex<double>>& h, std::size_t n, double off_tol) {
    const Mat m = hermitian_embedding(h, n);
    const SymEig e = jacobi_eig(m, off_tol);

    // Eigenvalues of the embedding come in duplicated pairs; after the
    // ascending sort the members of a pair are adjacent, so indices
    // 0, 2, 4, ... enumerate one representative each.
    HermEig out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<std::complex<double>>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = 2 * k;
        out.values[k] = 0.5 * (e.values[idx] + e.values[idx + 1]);
        for (std::size_t i = 0; i < n; ++i)
            out.vectors[k][i] = {e.vectors(i, idx), e.vectors(n + i, idx)};
        double nrm = 0.0;
        for (const auto& z : out.vectors[k]) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        for (auto& z : out.vectors[k]) z /= nrm;
    }
    return out;
}

std::vector<std::complex<double>> hermitian_solve(const std::vector<std::complex<double>>& h,
                                                  std::size_t n,
                                                  const std::vector<std::complex<double>>& b) {
    if (b.size() != n) throw std::invalid_argument("hermitian_solve: size mismatch");
    const Mat m = hermitian_embedding(h, n);
    const LuFactors f = lu_factor(m);
    if (f.singular) throw std::domain_error("hermitian_solve: singular matrix");
    std::vector<double> rhs(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = b[i].real();
        rhs[n + i] = b[i].imag();
    }
    const std::vector<double> x = lu_solve(f, rhs);
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {x[i], x[n + i]};
    return out;
}

Svd jacobi_svd(const Mat& m) {
    // One-sided Jacobi: accumulate right rotations W so that the columns of
    // A W become pairwise orthogonal; their norms are the singular values.
    const std::size_t rows = m.rows, cols = m.cols;
    Mat b = m;
    Mat v = Mat::identity(cols);

    const int max_sweeps = 60;
    const double tol = 1e-15;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += b(i, p) * b(i, p);
                    aqq += b(i, q) * b(i, q);
                    apq += b(i, p) * b(i, q);
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double bip = b(i, p), biq = b(i, q);
                    b(i, p) = c * bip - s * biq;
                    b(i, q) = s * bip + c * biq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += b(i, j) * b(i, j);
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    const std::size_t k = std::min(rows, cols);
    Svd out;
    out.singular_values.resize(k);
    out.u = Mat(rows, k);
    out.v = Mat(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t src = order[j];
        for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = v(i, src);
        if (j < k) {
            out.singular_values[j] = norms[src];
            if (norms[src] > 0.0)
                for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = b(i, src) / norms[src];
        }
    }
    return out;
}

std::vector<double> least_squares(const Mat& m, const std::vector<double>& b, double rank_tol) {
    if (m.rows != b.size()) throw std::invalid_argument("least_squares: size mismatch");
    const Svd svd = jacobi_svd(m);
    const double smax = svd.singular_values.empty() ? 0.0 : svd.singular_values[0];
    const double cut = rank_tol * std::max(smax, 1e-300);
    std::vector<double> x(m.cols, 0.0);
    for (std::size_t j = 0; j < svd.singular_values.size(); ++j) {
        const double s = svd.singular_values[j];
        if (s <= cut) break;
        double uj_b = 0.0;
        for (std::size_t i = 0; i < m.rows; ++i) uj_b += svd.u(i, j) * b[i];
        const double coef = uj_b / s;
        for (std::size_t i = 0; i < m.cols; ++i) x[i] += coef * svd.v(i, j);
    }
    return x;
}

std::vector<double> kernel_vector(const Mat& m, double* ratio) {
    const Svd svd = jacobi_svd(m);
    std::vector<double> d(m.cols);
    const std::size_t last = m.cols - 1;
    for (std::size_t i = 0; i < m.cols; ++i) d[i] = svd.v(i, last);
    if (ratio) {
        const double smax = svd.singular_values.empty() ? 0.0 : svd.singular_values[0];
        // Columns beyond min(m, n) have exact zero singular value.
        const double smin = (m.cols > m.rows) ? 0.0 : svd.singular_values.back();
        *ratio = (smax > 0.0) ? smin / smax : 0.0;
    }
    return d;
}

std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> c,
                                                   double drop_tol) {
    using cd = std::complex<double>;
    double cmax = 0.0;
    for (const auto& z : c) cmax = std::max(cmax, std::abs(z));
    if (cmax == 0.0) return {};
    const double cut = drop_tol * cmax;

    // Trailing near-zero coefficients: z = 0 roots.
    std::vector<cd> roots;
    std::size_t lo = 0;
    while (lo + 1 < c.size() && std::abs(c[lo]) <= cut) {
        roots.emplace_back(0.0, 0.0);
        ++lo;
    }
    std::size_t hi = c.size();
    while (hi > lo + 1 && std::abs(c[hi - 1]) <= cut) --hi;
    std::vector<cd> p(c.begin() + static_cast<std::ptrdiff_t>(lo),
                      c.begin() + static_cast<std::ptrdiff_t>(hi));
    const std::size_t deg = p.size() - 1;
    if (deg == 0) return roots;
    for (auto& z : p) z /= p.back();

    auto eval = [&](const cd& z) {
        cd s = p[deg];
        for (std::size_t k = deg; k-- > 0;) s = s * z + p[k];
        return s;
    };

    // Durand-Kerner with a deterministic spiral start.
    std::vector<cd> z(deg);
    const cd seed(0.4, 0.9);
    cd w = seed;
    for (std::size_t k = 0; k < deg; ++k) {
        z[k] = w;
        w *= seed;
    }
    const int max_iter = 500;
    for (int it = 0; it < max_iter; ++it) {
        double move = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            cd denom(1.0, 0.0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) < 1e-300) denom = cd(1e-300, 0.0);
            const cd delta = eval(z[k]) / denom;
            z[k] -= delta;
            move = std::max(move, std::abs(delta));
        }
        if (move < 1e-15) break;
    }
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace spikes
