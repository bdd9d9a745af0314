#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "alphaexp/roots.hpp"
#include "alphaexp/spectra.hpp"
#include "oracles.hpp"

using namespace alphaexp;

// Reference values below were computed with mpmath at 40 significant digits,
// by root-finding on the defining sums rather than the closed forms used here.

TEST_CASE("bisection")
{
    const auto r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    CHECK(r.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, 0.0, 2.0), std::domain_error);
}

TEST_CASE("kappa reference values")
{
    const AlphaParams two(2.0);
    CHECK(kappa(10.0, two) == doctest::Approx(0.4689955935892812).epsilon(1e-13));
    CHECK(kappa(3.0, two) == doctest::Approx(0.9182958340544895).epsilon(1e-13));
    CHECK(kappa(2.0, AlphaParams(3.0)) == doctest::Approx(0.9216908412367404).epsilon(1e-13));
    CHECK(kappa(1.2, AlphaParams::parse("3/2")) == doctest::Approx(0.4583122970827121).epsilon(1e-13));
    CHECK_THROWS_AS(kappa(1.0, two), std::domain_error);
}

TEST_CASE("kappa peaks at alpha/(alpha-1) with value 1")
{
    for (const char* a : {"3/2", "2", "3", "5/4", "7"}) {
        const auto p = AlphaParams::parse(a);
        const double b = p.value() / (p.value() - 1.0);
        CHECK(std::fabs(kappa(b, p) - 1.0) < 1e-12);
        const auto m = kappa_max(p);
        CHECK(m.argmax == doctest::Approx(b));
        CHECK(m.value == doctest::Approx(1.0));
        CHECK(kappa(b * 1.1, p) < 1.0);
        CHECK(kappa(1.0 + (b - 1.0) * 0.9, p) < 1.0);
    }
}

TEST_CASE("pressure against the truncated single-letter sum")
{
    for (double a : {1.5, 2.0, 3.0}) {
        const AlphaParams p(a);
        CHECK(std::fabs(pressure({1.0, 0.0}, p)) < 1e-12);
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            for (double gap : {0.05, 0.5, 2.0}) {
                const double q = t * std::log(a) - gap;
                CHECK(pressure({t, q}, p) == doctest::Approx(oracle::pressure_sum(t, q, a, 40000)).epsilon(1e-9));
            }
        }
    }
    CHECK_THROWS_AS(pressure({1.0, 1.0}, AlphaParams(2.0)), std::domain_error);
}

TEST_CASE("pressure derivatives match central differences")
{
    const AlphaParams p(2.0);
    const double h = 1e-5;
    for (double t : {0.3, 1.0, 1.7}) {
        for (double gap : {0.2, 1.0, 3.0}) {
            const GibbsParams gp{t, t * p.log_alpha() - gap};
            const double dq = (pressure({t, gp.q + h}, p) - pressure({t, gp.q - h}, p)) / (2 * h);
            const double dt = (pressure({t + h, gp.q}, p) - pressure({t - h, gp.q}, p)) / (2 * h);
            CHECK(std::fabs(dq - pressure_dq(gp, p)) < 1e-6);
            CHECK(std::fabs(dt - pressure_dt(gp, p)) < 1e-6);
        }
    }
}

TEST_CASE("pressure is convex in q")
{
    oracle::Gen gen(3);
    const AlphaParams p(1.5);
    for (int k = 0; k < 200; ++k) {
        const double t = gen.real(0.1, 3.0);
        const double top = t * p.log_alpha();
        const double q1 = top - gen.real(0.01, 5.0);
        const double q2 = top - gen.real(0.01, 5.0);
        const double lam = gen.real(0.0, 1.0);
        const double mid = pressure({t, lam * q1 + (1 - lam) * q2}, p);
        CHECK(mid <= lam * pressure({t, q1}, p) + (1 - lam) * pressure({t, q2}, p) + 1e-12);
    }
}

TEST_CASE("solve_tq satisfies the level-set equations and t = kappa")
{
    for (const char* a : {"3/2", "2", "3"}) {
        const auto p = AlphaParams::parse(a);
        for (double beta : {1.2, 1.5, 2.0, 3.0, 5.0, 10.0}) {
            const GibbsParams gp = solve_tq(beta, p);
            CHECK(gp.admissible(p));
            CHECK(std::fabs(pressure(gp, p) - gp.q * beta) < 1e-10);
            CHECK(std::fabs(pressure_dq(gp, p) - beta) < 1e-10);
            CHECK(gp.t == doctest::Approx(kappa(beta, p)).epsilon(1e-12));
            // cross-check with the truncated sum
            CHECK(oracle::pressure_sum(gp.t, gp.q, p.value(), 40000) == doctest::Approx(gp.q * beta).epsilon(1e-8));
        }
    }
}

TEST_CASE("Moran dimension")
{
    const AlphaParams two(2.0);
    CHECK(std::fabs(moran_dimension(1, two) - 1.0) < 1e-12);
    CHECK(std::fabs(moran_dimension(2, two) - oracle::log2_golden()) < 1e-10);
    CHECK(moran_dimension(3, two) == doctest::Approx(0.5514630897455955).epsilon(1e-12));
    CHECK(moran_dimension(2, AlphaParams(3.0)) == doctest::Approx(0.5371871129423005).epsilon(1e-12));
    CHECK(moran_dimension(5, AlphaParams::parse("3/2")) == doctest::Approx(0.5764407520441509).epsilon(1e-12));
    CHECK(moran_dimension(100, two) == doctest::Approx(0.04903312870363276).epsilon(1e-10));

    for (double a : {1.5, 2.0, 3.0}) {
        const AlphaParams p(a);
        double prev = 2.0;
        for (std::uint64_t M = 1; M <= 100; ++M) {
            const double D = moran_dimension(M, p);
            CHECK(D < prev);
            prev = D;
            if (M % 17 == 2) {
                CHECK(D == doctest::Approx(oracle::moran(M, a)).epsilon(1e-10));
            }
        }
        CHECK(moran_dimension(1'000'000, p) < 1e-3);
    }
    CHECK(moran_dimension(100, two) < 0.05);
    CHECK_THROWS_AS(moran_dimension(0, two), std::domain_error);
}

TEST_CASE("subsequence dimension, limit equation")
{
    const AlphaParams two(2.0);
    CHECK(std::fabs(subseq_dimension_limit(1.0, two) - oracle::log2_golden()) < 1e-10);
    CHECK(subseq_dimension_limit(2.0, AlphaParams(3.0)) == doctest::Approx(0.3984463897698639).epsilon(1e-12));
    CHECK(subseq_dimension_limit(0.5, AlphaParams::parse("3/2")) == doctest::Approx(0.9062154822914894).epsilon(1e-12));
    CHECK(subseq_dimension_limit(5.0, two) == doctest::Approx(0.3619918006957996).epsilon(1e-12));

    for (double a : {1.5, 2.0, 3.0}) {
        const AlphaParams p(a);
        double prev = 1.0;
        for (int i = 1; i <= 200; ++i) {
            const double mu = 0.05 * i;
            const double d = subseq_dimension_limit(mu, p);
            const double c = (a - 1) / std::pow(a, mu);
            CHECK(std::fabs(std::pow(c, d) - std::pow(a, d) + 1.0) < 1e-12);
            CHECK(d < prev);
            prev = d;
        }
    }
    CHECK_THROWS_AS(subseq_dimension_limit(0.0, two), std::domain_error);
}

TEST_CASE("subsequence dimension, finite equation")
{
    const AlphaParams two(2.0);
    CHECK(subseq_dimension_finite(2.0, 10, two) == doctest::Approx(0.5449965737113444).epsilon(1e-12));
    CHECK(subseq_dimension_finite(2.0, 20, two) == doctest::Approx(0.5513287228121843).epsilon(1e-12));

    oracle::Gen gen(6);
    for (int k = 0; k < 40; ++k) {
        const double a = gen.real(1.1, 4.0);
        const double mu = gen.real(0.0, 4.0);
        const auto M = gen.integer(2, 60);
        CHECK(subseq_dimension_finite(mu, M, AlphaParams(a))
              == doctest::Approx(oracle::subseq_finite(mu, M, a)).epsilon(1e-10));
    }

    for (double mu : {0.5, 1.0, 3.0}) {
        const double d = subseq_dimension_limit(mu, two);
        double prev = 0.0;
        for (std::uint64_t M = 2; M <= 50; ++M) {
            const double dm = subseq_dimension_finite(mu, M, two);
            CHECK(dm > prev);
            CHECK(dm < d);
            prev = dm;
        }
        CHECK(std::fabs(prev - d) < 1e-6);
        const auto M = default_truncation(mu, two);
        CHECK(std::fabs(subseq_dimension_finite(mu, M, two) - d) < 1e-6);
        CHECK(std::fabs(subseq_dimension_finite(mu, M - 1, two) - d) >= 1e-6);
    }
    CHECK_THROWS_AS(subseq_dimension_finite(1.0, 1, two), std::out_of_range);
    CHECK_THROWS_AS(subseq_dimension_finite(-1.0, 5, two), std::domain_error);
}
