#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "spikes/measures.hpp"
#include "spikes/rng.hpp"
#include "spikes/toeplitz.hpp"
#include "test_util.hpp"

using namespace spikes;

namespace {
MomentVector lebesgue_moments(int fc) {
    std::vector<double> y(2 * fc + 1, 0.0);
    y[0] = 1.0;
    return MomentVector(TrigSystem(fc), std::move(y));
}
}  // namespace

TEST_CASE("toeplitz matrix construction") {
    SUBCASE("unit mass at zero is the all-ones matrix") {
        const HermitianToeplitz t =
            build_toeplitz(moments(AtomicMeasure({Atom{TorusPoint(0.0), 1.0}}), TrigSystem(1)));
        REQUIRE(t.size() == 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(t(i, j) - 1.0) < 1e-15);
    }
    SUBCASE("lebesgue moments give the identity") {
        const HermitianToeplitz t = build_toeplitz(lebesgue_moments(2));
        REQUIRE(t.size() == 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::abs(t(i, j) - (i == j ? 1.0 : 0.0)) < 1e-15);
    }
    SUBCASE("zero moments give the zero matrix") {
        const MomentVector y(TrigSystem(2), std::vector<double>(5, 0.0));
        for (const auto& z : build_toeplitz(y).t) CHECK(std::abs(z) == 0.0);
    }
    SUBCASE("hermitian by construction") {
        SplitMix64 rng(17);
        const AtomicMeasure mu = testutil::random_separated_measure(rng, 3, 0.05, 0.2, 1.5);
        const HermitianToeplitz t = build_toeplitz(moments(mu, TrigSystem(3)));
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j)
                CHECK(std::abs(t(i, j) - std::conj(t(j, i))) < 1e-15);
    }
}

TEST_CASE("diagnosis") {
    SUBCASE("rank-one all-ones matrix") {
        const HermitianToeplitz t =
            build_toeplitz(moments(AtomicMeasure({Atom{TorusPoint(0.0), 1.0}}), TrigSystem(1)));
        const MomentDiagnosis d = diagnose(t);
        CHECK(d.is_psd);
        CHECK(d.rank == 1);
        CHECK(d.eigenvalues.front() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.eigenvalues.back() == doctest::Approx(2.0));
    }
    SUBCASE("identity is full rank") {
        const MomentDiagnosis d = diagnose(build_toeplitz(lebesgue_moments(2)));
        CHECK(d.is_psd);
        CHECK(d.rank == 3);
    }
    SUBCASE("c = (0, 1) is indefinite: no nonnegative solution") {
        const MomentVector y(TrigSystem(1), {0.0, 1.0, 0.0});
        const MomentDiagnosis d = diagnose(build_toeplitz(y));
        CHECK(!d.is_psd);
        CHECK(d.eigenvalues.front() == doctest::Approx(-1.0));
        CHECK(d.eigenvalues.back() == doctest::Approx(1.0));
        CHECK(recover_nonneg(y).branch == MomentBranch::no_solution);
    }
}

TEST_CASE("recovery of atomic nonnegative measures") {
    SUBCASE("single unit atom at zero") {
        const MomentRecovery r =
            recover_nonneg(moments(AtomicMeasure({Atom{TorusPoint(0.0), 1.0}}), TrigSystem(1)));
        REQUIRE(r.branch == MomentBranch::recovered);
        CHECK(r.diagnosis.rank == 1);
        REQUIRE(r.measure.size() == 1);
        CHECK(TorusPoint::distance(r.measure.atoms()[0].position, TorusPoint(0.0)) < 1e-9);
        CHECK(r.measure.atoms()[0].amplitude == doctest::Approx(1.0));
    }
    SUBCASE("two atoms, fc = 2") {
        const AtomicMeasure mu(
            {Atom{TorusPoint(0.1), 1.0}, Atom{TorusPoint(0.5), 2.0}});
        const MomentRecovery r = recover_nonneg(moments(mu, TrigSystem(2)));
        REQUIRE(r.branch == MomentBranch::recovered);
        const testutil::MatchError err = testutil::match_atoms(r.measure, mu);
        CHECK(err.position < 1e-6);
        CHECK(err.amplitude < 1e-6);
    }
    SUBCASE("invertible toeplitz is declared nonunique") {
        CHECK(recover_nonneg(lebesgue_moments(2)).branch == MomentBranch::nonunique);
    }
    SUBCASE("zero moments give the empty measure") {
        const MomentVector y(TrigSystem(2), std::vector<double>(5, 0.0));
        const MomentRecovery r = recover_nonneg(y);
        REQUIRE(r.branch == MomentBranch::recovered);
        CHECK(r.measure.empty());
    }
}

TEST_CASE("round trip on 200 seeded measures") {
    SplitMix64 rng(271828);
    int done = 0;
    while (done < 200) {
        const int fc = 1 + static_cast<int>(rng.below(5));
        const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(fc)));
        const AtomicMeasure mu =
            testutil::random_separated_measure(rng, r, 0.5 / fc, 0.5, 2.0);
        if (static_cast<int>(mu.size()) != r) continue;  // could not separate; resample
        const MomentVector y = moments(mu, TrigSystem(fc));
        const MomentRecovery rec = recover_nonneg(y);
        REQUIRE(rec.branch == MomentBranch::recovered);
        // rank equals cardinality (Caratheodory-Toeplitz)
        CHECK(rec.diagnosis.rank == r);
        const testutil::MatchError err = testutil::match_atoms(rec.measure, mu);
        CHECK(err.position < 1e-6);
        CHECK(err.amplitude < 1e-6);
        // nonnegativity before clamping is enforced inside recover_nonneg
        for (const Atom& a : rec.measure.atoms()) CHECK(a.amplitude >= 0.0);
        ++done;
    }
}

TEST_CASE("charging a prescribed point") {
    SUBCASE("lebesgue moments, t0 = 0") {
        const AtomicMeasure mu = recover_charging(lebesgue_moments(2), TorusPoint(0.0));
        REQUIRE(mu.size() == 3);
        double mass = 0.0;
        bool has_t0 = false;
        for (const Atom& a : mu.atoms()) {
            CHECK(a.amplitude > 0.0);
            mass += a.amplitude;
            if (TorusPoint::distance(a.position, TorusPoint(0.0)) < 1e-9) {
                has_t0 = true;
                CHECK(a.amplitude == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
            }
        }
        CHECK(has_t0);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        const MomentVector back = moments(mu, TrigSystem(2));
        CHECK(back.y[0] == doctest::Approx(1.0).epsilon(1e-8));
        for (std::size_t k = 1; k < 5; ++k) CHECK(std::abs(back.y[k]) < 1e-8);
    }
    SUBCASE("translation invariance of the lebesgue mass") {
        const AtomicMeasure mu = recover_charging(lebesgue_moments(2), TorusPoint(0.37));
        bool found = false;
        for (const Atom& a : mu.atoms())
            if (TorusPoint::distance(a.position, TorusPoint(0.37)) < 1e-9) {
                found = true;
                CHECK(a.amplitude == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
            }
        CHECK(found);
    }
    SUBCASE("rank-deficient input is rejected") {
        const MomentVector y = moments(AtomicMeasure({Atom{TorusPoint(0.2), 1.0}}), TrigSystem(2));
        CHECK_THROWS_AS(recover_charging(y, TorusPoint(0.2)), std::domain_error);
    }
    SUBCASE("charging output reproduces generic moments") {
        SplitMix64 rng(31415);
        for (int trial = 0; trial < 20; ++trial) {
            const int fc = 1 + static_cast<int>(rng.below(4));
            // fc + 1 well-separated atoms make T(c) invertible.
            const AtomicMeasure mu =
                testutil::random_separated_measure(rng, fc + 1, 0.4 / (fc + 1), 0.5, 2.0);
            if (static_cast<int>(mu.size()) != fc + 1) continue;
            const MomentVector y = moments(mu, TrigSystem(fc));
            if (diagnose(build_toeplitz(y)).rank != fc + 1) continue;
            const TorusPoint t0(rng.uniform());
            const AtomicMeasure rec = recover_charging(y, t0);
            CHECK(static_cast<int>(rec.size()) == fc + 1);
            bool has_t0 = false;
            for (const Atom& a : rec.atoms()) {
                CHECK(a.amplitude > 0.0);
                if (TorusPoint::distance(a.position, t0) < 1e-7) has_t0 = true;
            }
            CHECK(has_t0);
            const MomentVector back = moments(rec, TrigSystem(fc));
            for (std::size_t k = 0; k < y.y.size(); ++k)
                CHECK(testutil::close(back.y[k], y.y[k], 1e-8));
        }
    }
}
