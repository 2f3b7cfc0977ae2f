#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "spikes/linalg.hpp"
#include "spikes/rng.hpp"
#include "test_util.hpp"

using namespace spikes;
using testutil::close;

TEST_CASE("lu solves a random system") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        Mat a = testutil::random_matrix(rng, n, n);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += 3.0;  // keep well conditioned
        std::vector<double> x_true(n);
        for (double& v : x_true) v = rng.uniform(-2.0, 2.0);
        const std::vector<double> b = a * x_true;
        const LuFactors f = lu_factor(a);
        REQUIRE(!f.singular);
        const std::vector<double> x = lu_solve(f, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-10));

        const std::vector<double> bt = mul_transpose(a, x_true);
        const std::vector<double> xt = lu_solve_transposed(f, bt);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(xt[i] == doctest::Approx(x_true[i]).epsilon(1e-10));
    }
}

TEST_CASE("lu flags singular input") {
    Mat a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK(lu_factor(a).singular);
}

TEST_CASE("jacobi eigendecomposition reconstructs the matrix") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 2 + rng.below(9);
        Mat a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = rng.uniform(-1.0, 1.0);
                a(i, j) = v;
                a(j, i) = v;
            }
        const SymEig e = jacobi_eig(a);
        // ascending order
        for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i - 1] <= e.values[i] + 1e-14);
        // A v_i = lambda_i v_i
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> vi(n);
            for (std::size_t r = 0; r < n; ++r) vi[r] = e.vectors(r, i);
            const std::vector<double> av = a * vi;
            for (std::size_t r = 0; r < n; ++r)
                CHECK(close(av[r], e.values[i] * vi[r], 1e-10));
        }
    }
}

TEST_CASE("hermitian eigendecomposition via real embedding") {
    // H = [[2, i], [-i, 2]] has eigenvalues 1 and 3.
    std::vector<std::complex<double>> h = {{2.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {2.0, 0.0}};
    const HermEig e = hermitian_eig(h, 2);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
    // residual ||H v - lambda v||
    for (int k = 0; k < 2; ++k) {
        std::complex<double> r0 = h[0] * e.vectors[k][0] + h[1] * e.vectors[k][1] -
                                  e.values[k] * e.vectors[k][0];
        std::complex<double> r1 = h[2] * e.vectors[k][0] + h[3] * e.vectors[k][1] -
                                  e.values[k] * e.vectors[k][1];
        CHECK(std::abs(r0) < 1e-12);
        CHECK(std::abs(r1) < 1e-12);
    }
}

TEST_CASE("hermitian solve") {
    std::vector<std::complex<double>> h = {{3.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {2.0, 0.0}};
    std::vector<std::complex<double>> x_true = {{1.0, -0.5}, {0.25, 2.0}};
    std::vector<std::complex<double>> b = {h[0] * x_true[0] + h[1] * x_true[1],
                                           h[2] * x_true[0] + h[3] * x_true[1]};
    const auto x = hermitian_solve(h, 2, b);
    CHECK(std::abs(x[0] - x_true[0]) < 1e-12);
    CHECK(std::abs(x[1] - x_true[1]) < 1e-12);
}

TEST_CASE("svd orthogonality and reconstruction") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t m = 1 + rng.below(6);
        const std::size_t n = 1 + rng.below(9);
        const Mat a = testutil::random_matrix(rng, m, n);
        const Svd svd = jacobi_svd(a);
        // descending singular values
        for (std::size_t i = 1; i < svd.singular_values.size(); ++i)
            CHECK(svd.singular_values[i - 1] >= svd.singular_values[i] - 1e-14);
        // A = U S V^T on the leading block
        const std::size_t k = std::min(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < k; ++l)
                    s += svd.u(i, l) * svd.singular_values[l] * svd.v(j, l);
                CHECK(close(s, a(i, j), 1e-10));
            }
        // V orthogonal
        for (std::size_t c1 = 0; c1 < n; ++c1)
            for (std::size_t c2 = c1; c2 < n; ++c2) {
                double d = 0.0;
                for (std::size_t r = 0; r < n; ++r) d += svd.v(r, c1) * svd.v(r, c2);
                CHECK(close(d, c1 == c2 ? 1.0 : 0.0, 1e-10));
            }
    }
}

TEST_CASE("kernel vector annihilates wide matrices") {
    SplitMix64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t m = 1 + rng.below(5);
        const std::size_t n = m + 1 + rng.below(6);
        const Mat a = testutil::random_matrix(rng, m, n);
        const std::vector<double> d = kernel_vector(a);
        CHECK(norm2(d) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(norm_inf(a * d) < 1e-12);
    }
}

TEST_CASE("least squares matches the normal equations on a tall system") {
    SplitMix64 rng(13);
    const Mat a = testutil::random_matrix(rng, 8, 3);
    std::vector<double> b(8);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);
    const std::vector<double> x = least_squares(a, b);
    // A^T (A x - b) = 0
    std::vector<double> res = a * x;
    for (std::size_t i = 0; i < b.size(); ++i) res[i] -= b[i];
    CHECK(norm_inf(mul_transpose(a, res)) < 1e-12);
}

TEST_CASE("polynomial roots") {
    using cd = std::complex<double>;
    SUBCASE("quadratic with known roots") {
        // (z - 1)(z + 2) = z^2 + z - 2
        auto roots = polynomial_roots({cd(-2.0), cd(1.0), cd(1.0)});
        REQUIRE(roots.size() == 2);
        std::sort(roots.begin(), roots.end(), [](cd a, cd b) { return a.real() < b.real(); });
        CHECK(std::abs(roots[0] - cd(-2.0)) < 1e-12);
        CHECK(std::abs(roots[1] - cd(1.0)) < 1e-12);
    }
    SUBCASE("unit circle roots survive") {
        // (z - e^{i0.3})(z - e^{-i1.1})(z - 0.5)
        const cd r1 = std::polar(1.0, 0.3), r2 = std::polar(1.0, -1.1), r3(0.5, 0.0);
        std::vector<cd> c = {-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3),
                             cd(1.0)};
        const auto roots = polynomial_roots(c);
        REQUIRE(roots.size() == 3);
        for (const cd& want : {r1, r2, r3}) {
            double best = 1e9;
            for (const cd& got : roots) best = std::min(best, std::abs(got - want));
            CHECK(best < 1e-11);
        }
    }
    SUBCASE("residuals vanish on random polynomials") {
        SplitMix64 rng(21);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t deg = 1 + rng.below(10);
            std::vector<cd> c(deg + 1);
            for (auto& z : c) z = cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            c.back() += cd(2.0, 0.0);  // keep the leading coefficient solid
            const auto roots = polynomial_roots(c);
            REQUIRE(roots.size() == deg);
            for (const cd& z : roots) {
                cd v(0.0, 0.0);
                for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
                CHECK(std::abs(v) < 1e-8);
            }
        }
    }
    SUBCASE("trailing zeros give roots at the origin") {
        const auto roots = polynomial_roots({cd(0.0), cd(0.0), cd(1.0)});
        REQUIRE(roots.size() == 2);
        CHECK(std::abs(roots[0]) < 1e-12);
        CHECK(std::abs(roots[1]) < 1e-12);
    }
}
