#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "resil/index.hpp"

using namespace resil;
using fixtures::make_window;

TEST_CASE("engineering component worked values") {
    SUBCASE("immediate recovery scores 1") {
        // n=10, t_cR=2, first performance value already at the level.
        const auto w = make_window({1, 5}, {5, 4, 4, 4, 4, 4, 4, 4});
        CHECK(engineering_component(w) == 1.0);
    }
    SUBCASE("no recovery scores 0") {
        const auto w = make_window({1, 5, 3}, {4, 4, 4});
        CHECK(engineering_component(w) == 0.0);
    }
    SUBCASE("log-ratio value: H=8, tau=4 gives 1/3") {
        // n=12, t_cR=4, recovery at index 8.
        const auto w = make_window({1, 2, 3, 10}, {5, 6, 7, 10, 9, 9, 9, 9});
        CHECK(engineering_component(w) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(engineering_component(w) ==
              doctest::Approx(std::log(2.0) / std::log(8.0)).epsilon(1e-12));
    }
    SUBCASE("degenerate single-step horizon") {
        const auto recovered = make_window({1, 5}, {6});
        CHECK(engineering_component(recovered) == 1.0);
        const auto missed = make_window({1, 5}, {4});
        CHECK(engineering_component(missed) == 0.0);
    }
}

TEST_CASE("ecological component worked values") {
    SUBCASE("recovery to the same level scores 1") {
        const auto w = make_window({100, 50}, {100, 80});
        CHECK(ecological_component(w) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("upward shift") {
        const auto w = make_window({100, 50}, {150, 80});
        CHECK(ecological_component(w) == doctest::Approx(std::exp(50.0 / 150.0)).epsilon(1e-12));
    }
    SUBCASE("downward shift") {
        const auto w = make_window({150, 50}, {100, 80});
        CHECK(ecological_component(w) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
    }
    SUBCASE("printed sign convention flips the exponent") {
        const auto w = make_window({100, 50}, {150, 80});
        CHECK(ecological_component(w, SignConvention::AsPrinted) ==
              doctest::Approx(std::exp(-50.0 / 150.0)).epsilon(1e-12));
    }
    SUBCASE("degenerate zero levels") {
        const auto w = make_window({0.0, 0.0}, {0.0});
        CHECK_THROWS_AS(ecological_component(w), DegenerateLevels);
    }
}

TEST_CASE("evolutionary component worked values") {
    SUBCASE("steady at the reference level") {
        const auto w = make_window({100, 90}, {100, 100, 100});
        CHECK(evolutionary_component(w) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("symmetric deviations cancel") {
        const auto w = make_window({100, 90}, {80, 120});
        CHECK(evolutionary_component(w) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("above-reference mean") {
        const auto w = make_window({100, 90}, {110, 120, 130});
        CHECK(evolutionary_component(w) == doctest::Approx(std::exp(60.0 / 690.0)).epsilon(1e-12));
    }
}

TEST_CASE("scalar index and classification") {
    CHECK(scalar_index({1.0, 1.0, 1.0, +1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scalar_index({0.0, 1.0, 1.0, -1}) ==
          doctest::Approx(-std::sqrt(2.0) / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(scalar_index({1.0 / 3.0, std::exp(1.0 / 3.0), std::exp(60.0 / 690.0), +1}) ==
          doctest::Approx(1.04064).epsilon(1e-4));

    CHECK(classify(-0.5) == Class::Low);
    CHECK(classify(0.5) == Class::Medium);
    CHECK(classify(1.04) == Class::High);
    CHECK(classify(0.0) == Class::Medium); // boundary: closed on the left
    CHECK(classify(1.0) == Class::High);
    CHECK_THROWS_AS(classify(std::nan("")), NonFinite);
    CHECK_THROWS_AS(classify(INFINITY), NonFinite);
}

TEST_CASE("compute_record composes identities") {
    SUBCASE("flat recovery at the reference level") {
        const auto w = make_window({100, 100}, {100, 100, 100});
        const auto rec = compute_record(w);
        CHECK(rec.vector.r_en == 1.0);
        CHECK(rec.vector.r_ec == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rec.vector.r_ev == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rec.i_r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rec.cls == Class::High);
    }
    SUBCASE("no recovery below the level is Low") {
        const auto w = make_window({100, 100}, {80, 70, 60});
        const auto rec = compute_record(w);
        CHECK(rec.vector.r_en == 0.0);
        CHECK(rec.vector.direction == -1);
        CHECK(rec.i_r < 0.0);
        CHECK(rec.cls == Class::Low);
    }
    SUBCASE("worked window against the step-by-step oracle") {
        const std::vector<double> reference = {70, 80, 90, 100};
        const std::vector<double> performance = {90, 95, 100, 105, 110, 108, 112, 115};
        const auto rec = compute_record(make_window(reference, performance));
        const auto expected = oracle::evaluate(reference, performance);
        CHECK(rec.vector.r_en == doctest::Approx(double(expected.r_en)).epsilon(1e-12));
        CHECK(rec.vector.r_ec == doctest::Approx(double(expected.r_ec)).epsilon(1e-12));
        CHECK(rec.vector.r_ev == doctest::Approx(double(expected.r_ev)).epsilon(1e-12));
        CHECK(rec.i_r == doctest::Approx(double(expected.i_r)).epsilon(1e-12));
    }
}

TEST_CASE("range, sign, and rescaling invariants over random windows") {
    std::mt19937 rng(42);
    const double e_inv = std::exp(-1.0), e_pos = std::exp(1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto w = fixtures::random_window(rng);
        const auto rec = compute_record(w);
        CHECK(rec.vector.r_en >= 0.0);
        CHECK(rec.vector.r_en <= 1.0);
        CHECK(rec.vector.r_ec >= e_inv - 1e-12);
        CHECK(rec.vector.r_ec <= e_pos + 1e-12);
        CHECK(rec.vector.r_ev > 0.0);
        CHECK((rec.cls == Class::Low) == (w.M_P < w.c_R));

        // Positive rescaling leaves the whole record unchanged.
        for (double lambda : {0.001, 1000.0}) {
            auto scaled = w;
            for (auto& p : scaled.reference_segment) p.value *= lambda;
            for (auto& p : scaled.performance_segment) p.value *= lambda;
            scaled.c_R *= lambda;
            scaled.M_P *= lambda;
            const auto rec2 = compute_record(scaled);
            CHECK(rec2.vector.r_en == doctest::Approx(rec.vector.r_en).epsilon(1e-9));
            CHECK(rec2.vector.r_ec == doctest::Approx(rec.vector.r_ec).epsilon(1e-9));
            CHECK(rec2.vector.r_ev == doctest::Approx(rec.vector.r_ev).epsilon(1e-9));
            CHECK(rec2.cls == rec.cls);
        }

        // Evolutionary mean law.
        double mean = 0.0;
        for (const auto& p : w.performance_segment) mean += p.value;
        mean /= w.n_P;
        if (std::abs(mean - w.c_R) > 1e-9 * w.c_R)
            CHECK((rec.vector.r_ev > 1.0) == (mean > w.c_R));
    }
}

TEST_CASE("recovery monotonicity in tau for fixed horizon") {
    // Fixed reference, recovery moved later step by step: r_en must strictly
    // decrease.
    for (int horizon = 2; horizon <= 12; ++horizon) {
        double previous = 2.0;
        for (int tau = 1; tau <= horizon; ++tau) {
            std::vector<double> performance(horizon, 50.0);
            performance[tau - 1] = 100.0;
            const auto w = make_window({90, 100}, performance);
            const double r_en = engineering_component(w);
            CHECK(r_en < previous);
            previous = r_en;
        }
    }
}

TEST_CASE("ecological monotonicity in M_P for positive levels") {
    double previous = 0.0;
    for (double m_p = 10.0; m_p <= 300.0; m_p += 10.0) {
        const auto w = make_window({100, 90}, {m_p});
        const double r_ec = ecological_component(w);
        if (m_p > 10.0) CHECK(r_ec >= previous);
        previous = r_ec;
    }
}

TEST_CASE("engineering recovery index matches a brute-force scan") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto w = fixtures::random_window(rng);
        std::vector<double> perf;
        for (const auto& p : w.performance_segment) perf.push_back(p.value);
        const auto pos = oracle::first_recovery_position(perf, w.c_R);
        const double r_en = engineering_component(w);
        if (!pos) {
            CHECK(r_en == 0.0);
        } else {
            const int horizon = w.n - w.t_cR;
            const int tau = static_cast<int>(w.reference_segment.size()) + *pos - w.t_cR;
            const double expected =
                horizon == 1 ? 1.0 : std::log(double(horizon) / tau) / std::log(double(horizon));
            CHECK(r_en == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}
