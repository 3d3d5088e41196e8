#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "resil/stats.hpp"

using namespace resil;

TEST_CASE("incomplete beta sanity") {
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1,1) = x; I_x(a,b) + I_{1-x}(b,a) = 1.
    CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(incomplete_beta(2.5, 1.5, 0.4) + incomplete_beta(1.5, 2.5, 0.6) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, -0.1), DomainError);
    CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, 1.1), DomainError);
}

TEST_CASE("t CDF agrees with the quadrature oracle") {
    for (double df : {1.0, 3.0, 9.0, 30.0, 120.0}) {
        for (double t : {-3.0, -1.0, -0.2, 0.0, 0.5, 1.96, 4.0}) {
            CHECK(t_cdf(t, df) ==
                  doctest::Approx(oracle::t_cdf_quadrature(t, df)).epsilon(1e-7));
        }
    }
    CHECK(t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t_cdf(-2.3, 11.0) == doctest::Approx(1.0 - t_cdf(2.3, 11.0)).epsilon(1e-12));
    CHECK_THROWS_AS(t_cdf(1.0, 0.0), DomainError);
}

TEST_CASE("t quantile worked values") {
    CHECK(t_quantile(0.975, 9) == doctest::Approx(2.262157163).epsilon(1e-6));
    CHECK(t_quantile(0.975, 9) ==
          doctest::Approx(oracle::t_quantile_quadrature(0.975, 9.0)).epsilon(1e-6));
    CHECK(t_quantile(0.95, 5) ==
          doctest::Approx(oracle::t_quantile_quadrature(0.95, 5.0)).epsilon(1e-6));
    CHECK(t_quantile(0.5, 17) == 0.0);
    // Large df converges to the normal quantile.
    CHECK(t_quantile(0.975, 1000000) ==
          doctest::Approx(oracle::normal_quantile(0.975)).epsilon(1e-4));
    CHECK(t_quantile(0.975, 1000000) == doctest::Approx(1.959964).epsilon(1e-4));
    // Round trip through the CDF.
    for (double p : {0.05, 0.25, 0.9, 0.995})
        CHECK(t_cdf(t_quantile(p, 12), 12.0) == doctest::Approx(p).epsilon(1e-8));
    CHECK_THROWS_AS(t_quantile(0.0, 5), DomainError);
    CHECK_THROWS_AS(t_quantile(1.0, 5), DomainError);
    CHECK_THROWS_AS(t_quantile(0.5, 0), DomainError);
}

TEST_CASE("F CDF agrees with the quadrature oracle") {
    CHECK(f_cdf(0.0, 3.0, 7.0) == 0.0);
    for (double x : {0.5, 1.0, 3.0, 5.5})
        for (auto [d1, d2] : {std::pair{1.0, 6.0}, {2.0, 12.0}, {5.0, 20.0}})
            CHECK(f_cdf(x, d1, d2) ==
                  doctest::Approx(oracle::f_cdf_quadrature(x, d1, d2)).epsilon(1e-6));
    CHECK_THROWS_AS(f_cdf(1.0, 0.0, 5.0), DomainError);
}

TEST_CASE("confidence interval worked values") {
    SUBCASE("1..10 at 95%") {
        const std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        const auto s = confidence_interval(v, 0.95, "demo");
        CHECK(s.n == 10);
        CHECK(s.mean == doctest::Approx(5.5).epsilon(1e-12));
        CHECK(s.sd == doctest::Approx(std::sqrt(82.5 / 9.0)).epsilon(1e-12));
        CHECK(s.ci_low == doctest::Approx(3.334149).epsilon(1e-5));
        CHECK(s.ci_high == doctest::Approx(7.665851).epsilon(1e-5));
        CHECK(s.interval_defined);
        // Cross-check the half width against the quadrature quantile.
        const double half = oracle::t_quantile_quadrature(0.975, 9.0) * s.sd / std::sqrt(10.0);
        CHECK(s.ci_high - s.mean == doctest::Approx(half).epsilon(1e-6));
    }
    SUBCASE("zero variance collapses the interval") {
        const auto s = confidence_interval({4.2, 4.2, 4.2}, 0.95);
        CHECK(s.sd == 0.0);
        CHECK(s.ci_low == doctest::Approx(4.2));
        CHECK(s.ci_high == doctest::Approx(4.2));
    }
    SUBCASE("fewer than two observations") {
        CHECK_THROWS_AS(confidence_interval({1.0}, 0.95), InsufficientData);
        CHECK_THROWS_AS(confidence_interval({}, 0.95), InsufficientData);
    }
    SUBCASE("invalid level") {
        CHECK_THROWS_AS(confidence_interval({1.0, 2.0}, 1.0), DomainError);
    }
    SUBCASE("width shrinks like 1/sqrt(n) for repeated data") {
        // Same sd by construction; quadruple the n and the half width should
        // roughly halve (t quantile also shrinks slightly, so use a band).
        std::mt19937 rng(3);
        std::normal_distribution<double> noise(0.0, 1.0);
        std::vector<double> base(40);
        for (auto& v : base) v = noise(rng);
        std::vector<double> quad;
        for (int rep = 0; rep < 4; ++rep) quad.insert(quad.end(), base.begin(), base.end());
        const auto a = confidence_interval(base, 0.95);
        const auto b = confidence_interval(quad, 0.95);
        const double ratio = (b.ci_high - b.ci_low) / (a.ci_high - a.ci_low);
        CHECK(ratio > 0.42);
        CHECK(ratio < 0.52);
    }
}

TEST_CASE("Levene worked example") {
    const auto r = levene_test({{1, 2, 3, 4}, {2, 2, 3, 3}});
    CHECK(r.w_statistic == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.df1 == 1);
    CHECK(r.df2 == 6);
    CHECK(r.p_value == doctest::Approx(0.1340).epsilon(2e-3));
    CHECK(r.p_value ==
          doctest::Approx(1.0 - oracle::f_cdf_quadrature(3.0, 1.0, 6.0)).epsilon(1e-6));
}

TEST_CASE("Levene invariances and edge cases") {
    std::mt19937 rng(11);
    std::normal_distribution<double> g1(0.0, 1.0), g2(0.0, 3.0);
    std::vector<double> a(25), b(30);
    for (auto& v : a) v = g1(rng);
    for (auto& v : b) v = g2(rng);
    const auto base = levene_test({a, b});

    SUBCASE("location shift leaves W unchanged") {
        auto a2 = a;
        for (auto& v : a2) v += 100.0;
        const auto r = levene_test({a2, b});
        CHECK(r.w_statistic == doctest::Approx(base.w_statistic).epsilon(1e-9));
    }
    SUBCASE("common rescaling leaves W unchanged") {
        auto a2 = a, b2 = b;
        for (auto& v : a2) v *= 7.0;
        for (auto& v : b2) v *= 7.0;
        const auto r = levene_test({a2, b2});
        CHECK(r.w_statistic == doctest::Approx(base.w_statistic).epsilon(1e-9));
    }
    SUBCASE("unequal spread is detected") {
        CHECK(base.p_value < 0.01);
    }
    SUBCASE("median centering (Brown-Forsythe) runs and stays close here") {
        const auto r = levene_test({a, b}, LeveneCenter::Median);
        CHECK(r.df1 == 1);
        CHECK(r.df2 == 53);
        CHECK(r.p_value < 0.05);
    }
    SUBCASE("degenerate groups throw") {
        CHECK_THROWS_AS(levene_test({{1, 1, 1}, {2, 2}}), DegenerateGroups);
    }
    SUBCASE("group minima enforced") {
        CHECK_THROWS_AS(levene_test({{1.0, 2.0}}), DomainError);
        CHECK_THROWS_AS(levene_test({{1.0, 2.0}, {3.0}}), DomainError);
    }
}
