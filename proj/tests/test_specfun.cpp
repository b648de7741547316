#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su11/specfun.hpp"
#include "support/test_oracles.hpp"

using namespace su11;
using specfun::bessel_i;
using specfun::bessel_ratio;
using specfun::log_gamma;
using testing::bessel_i_reference;

TEST_CASE("log_gamma at integer and half-integer anchors") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    // ln Gamma(1/2) = ln sqrt(pi)
    CHECK(log_gamma(0.5) ==
          doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-12));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-3.0), std::domain_error);
}

TEST_CASE("log_gamma functional equation Gamma(x+1) = x Gamma(x)") {
    for (double x = 0.5; x <= 50.0; x += 1.37) {
        const double ratio = std::exp(log_gamma(x + 1.0) - log_gamma(x));
        CHECK(ratio == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("bessel_i at the series anchors") {
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(1, 0.0) == 0.0);
    CHECK(bessel_i(1, 2.0) == doctest::Approx(1.590636854637329).epsilon(1e-12));
}

TEST_CASE("bessel_i against a long-double reference series") {
    for (int m = 0; m <= 6; ++m) {
        for (const double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            CHECK(bessel_i(m, x) == doctest::Approx(bessel_i_reference(m, x)).epsilon(1e-13));
            CHECK(bessel_i(m, x) > 0.0);
        }
    }
}

TEST_CASE("bessel recurrence I_{m-1} - I_{m+1} = (2m/x) I_m") {
    for (int m = 1; m <= 10; ++m) {
        for (double x = 0.1; x <= 20.0; x += 1.9) {
            const double lhs = bessel_i(m - 1, x) - bessel_i(m + 1, x);
            const double rhs = 2.0 * m / x * bessel_i(m, x);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * bessel_i(m - 1, x));
        }
    }
}

TEST_CASE("bessel_i non-convergence carries the partial sum") {
    specfun::SeriesTolerance tight{1e-14, 64};
    try {
        bessel_i(0, 600.0, tight);
        FAIL("expected SeriesNonConvergence");
    } catch (const SeriesNonConvergence& e) {
        CHECK(e.partial_sum > 0.0);
        CHECK(e.terms_used == 64);
    }
}

TEST_CASE("series tolerance validation") {
    CHECK_THROWS_AS(bessel_i(0, 1.0, specfun::SeriesTolerance{1e-5, 512}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bessel_i(0, 1.0, specfun::SeriesTolerance{1e-14, 32}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bessel_i(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(0, -1.0), std::domain_error);
}

TEST_CASE("bessel_ratio agrees with the series quotient") {
    CHECK(bessel_ratio(1, 2.0) == doctest::Approx(0.4331274267223119).epsilon(1e-12));
    for (int m = 0; m <= 8; ++m) {
        for (const double x : {0.2, 1.0, 2.0, 4.0, 9.0, 18.0}) {
            const double quotient = bessel_i(m + 1, x) / bessel_i(m, x);
            CHECK(bessel_ratio(m, x) == doctest::Approx(quotient).epsilon(1e-12));
            CHECK(bessel_ratio(m, x) > 0.0);
            CHECK(bessel_ratio(m, x) < 1.0);
        }
    }
}

TEST_CASE("bessel_ratio limits and monotonicity") {
    // I_1/I_0 ~ x/2 as x -> 0+
    CHECK(bessel_ratio(0, 1e-8) == doctest::Approx(5e-9).epsilon(1e-8));
    CHECK(bessel_ratio(3, 4.0) > 0.0);
    CHECK(bessel_ratio(3, 4.0) < 1.0);
    for (int m = 0; m <= 5; ++m) {
        double prev = 0.0;
        for (double x = 0.25; x <= 24.0; x += 0.25) {
            const double r = bessel_ratio(m, x);
            CHECK(r > prev);
            prev = r;
        }
    }
    CHECK_THROWS_AS(bessel_ratio(0, 0.0), std::domain_error);
}
