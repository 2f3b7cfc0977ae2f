#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spikes/rng.hpp"
#include "spikes/spline.hpp"
#include "test_util.hpp"

using namespace spikes;

TEST_CASE("truncated power atoms") {
    CHECK(truncated_power(0.25, 0) == 1.0);   // Heaviside
    CHECK(truncated_power(-0.25, 0) == 0.0);
    CHECK(truncated_power(0.25, 1) == 0.25);  // ramp
    CHECK(truncated_power(-0.1, 1) == 0.0);
    CHECK(truncated_power(1.0, 2) == doctest::Approx(0.5));  // x^2/2!
}

TEST_CASE("step fit: one knot between the samples with unit jump") {
    SplineProblem prob;
    prob.order = 1;
    prob.samples = {{0.2, 0.0}, {0.8, 1.0}};
    prob.knot_grid = 512;
    const SplineSolution sol = solve_spline(prob);

    // u must climb by one between the samples and |D u|(T) bounds that
    // climb, so the optimum is a single unit jump inside (0.2, 0.8].
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(sol.model.knots.size() == 1);
    CHECK(sol.model.knots[0].a == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.model.knots[0].x > 0.2);
    CHECK(sol.model.knots[0].x <= 0.8);
    CHECK(sol.poly_block_rank == 1);

    CHECK(eval_spline(sol.model, 0.2) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(eval_spline(sol.model, 0.8) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("constant data needs no knots") {
    for (int n : {1, 2, 3}) {
        SplineProblem prob;
        prob.order = n;
        prob.samples = {{0.1, 3.0}, {0.5, 3.0}, {0.9, 3.0}};
        const SplineSolution sol = solve_spline(prob);
        CHECK(sol.model.knots.empty());
        CHECK(sol.objective == doctest::Approx(0.0));
        CHECK(eval_spline(sol.model, 0.3) == doctest::Approx(3.0).epsilon(1e-9));
    }
}

TEST_CASE("affine data lies in the kernel of the second derivative") {
    SplineProblem prob;
    prob.order = 2;
    prob.samples = {{0.1, 0.2}, {0.5, 1.0}, {0.9, 1.8}};  // y = 2x
    const SplineSolution sol = solve_spline(prob);
    CHECK(sol.model.knots.empty());
    CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.model.poly[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(sol.model.poly[1] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("spline evaluation formula") {
    SplineModel m;
    m.order = 1;
    m.knots = {SplineKnot{0.5, 1.0}};
    m.poly = {0.0};
    CHECK(eval_spline(m, 0.75) == doctest::Approx(1.0));  // past the jump
    CHECK(eval_spline(m, 0.25) == doctest::Approx(0.0));  // before the jump

    SplineModel q;
    q.order = 2;
    q.knots = {SplineKnot{0.0, 1.0}};
    q.poly = {0.0, 0.0};
    CHECK(eval_spline(q, 1.0) == doctest::Approx(1.0));  // ramp (x)_+ at x = 1
    CHECK(eval_spline(q, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("interpolation and knot bound on seeded problems") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const std::size_t m = static_cast<std::size_t>(n) + 1 +
                              rng.below(static_cast<std::uint64_t>(10 - n));
        SplineProblem prob;
        prob.order = n;
        prob.knot_grid = 512;
        std::vector<double> xs;
        while (xs.size() < m) {
            const double s = rng.uniform();
            bool ok = true;
            for (double prev : xs)
                if (std::abs(prev - s) < 0.01) ok = false;
            if (ok) xs.push_back(s);
        }
        for (double s : xs) prob.samples.push_back({s, rng.uniform(-2.0, 2.0)});

        const SplineSolution sol = solve_spline(prob);
        // Theorem-level knot bound: at most m - d knots.
        CHECK(static_cast<int>(sol.model.knots.size()) <=
              static_cast<int>(m) - sol.poly_block_rank);
        // Exact interpolation.
        for (const auto& [s, v] : prob.samples)
            CHECK(testutil::close(eval_spline(sol.model, s), v, 1e-8));
        // Objective equals the model's own knot tv.
        CHECK(sol.objective == doctest::Approx(knot_tv(sol.model)).epsilon(1e-12));
    }
}

TEST_CASE("input validation") {
    SplineProblem bad;
    bad.order = 0;
    bad.samples = {{0.5, 1.0}};
    CHECK_THROWS_AS(solve_spline(bad), std::invalid_argument);
    SplineProblem dup;
    dup.order = 1;
    dup.samples = {{0.5, 1.0}, {0.5, 2.0}};
    CHECK_THROWS_AS(solve_spline(dup), std::invalid_argument);
    SplineProblem range;
    range.order = 1;
    range.samples = {{1.5, 1.0}};
    CHECK_THROWS_AS(solve_spline(range), std::invalid_argument);
}
