#include <doctest.h>

#include <cmath>

#include "su11/fock_oracle.hpp"
#include "su11/qfi.hpp"
#include "support/test_oracles.hpp"

using namespace su11;
using namespace su11::qfi;
using testing::product_state;
using testing::rel_dev;

namespace {

InputMoments vacuum_port_moments(const PhotonStatistics& stats) {
    InputMoments m;
    m.mean_g1 = stats.mean;
    m.var_g1 = stats.variance;
    return m;
}

}  // namespace

TEST_CASE("from_matrix relations") {
    const auto r = QfimResult::from_matrix(2.0, 3.0, 0.5);
    REQUIRE(r.h_a.has_value());
    CHECK(*r.h_a == doctest::Approx(3.0 - 0.25 / 2.0).epsilon(1e-15));
    CHECK(r.h_b == doctest::Approx(3.0 + 2.0 - 1.0).epsilon(1e-15));
    CHECK(r.h_c == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(*r.qcrb_b == doctest::Approx(1.0 / std::sqrt(4.0)).epsilon(1e-15));

    const auto z = QfimResult::from_matrix(0.0, 0.0, 0.0);
    CHECK(!z.h_a.has_value());
    CHECK(!z.qcrb_b.has_value());
}

TEST_CASE("two-mode vacuum: everything vanishes, h_a undefined") {
    InputMoments m;  // all zeros
    for (const double t : {0.0, 0.3, 1.0}) {
        const auto r = qfim_general(m, t);
        CHECK(r.h_ss == 0.0);
        CHECK(r.h_dd == 0.0);
        CHECK(r.h_sd == 0.0);
        CHECK(r.h_b == 0.0);
        CHECK(r.h_c == 0.0);
        CHECK(!r.h_a.has_value());
    }
}

TEST_CASE("balanced closed forms, Perelomov(1,1) and Barut-Girardello(1,1)") {
    const auto pcs = StateSpec::perelomov(1.0, 1.0);
    const double rb = std::sqrt(0.5);
    CHECK(qfi_closed_form(pcs, rb, Scenario::TwoParam) ==
          doctest::Approx(0.5430806348152437).epsilon(1e-12));
    CHECK(qfi_closed_form(pcs, rb, Scenario::Asymmetric) ==
          doctest::Approx(1.2336295575861516).epsilon(1e-12));
    CHECK(qfi_closed_form(pcs, rb, Scenario::Symmetric) ==
          doctest::Approx(0.6168147787930757).epsilon(1e-12));

    const auto bgcs = StateSpec::barut_girardello(1.0, 1.0);
    CHECK(qfi_closed_form(bgcs, rb, Scenario::TwoParam) ==
          doctest::Approx(0.4331274267223119).epsilon(1e-12));
    CHECK(qfi_closed_form(bgcs, rb, Scenario::Asymmetric) ==
          doctest::Approx(0.8124006322209086).epsilon(1e-12));
    CHECK(qfi_closed_form(bgcs, rb, Scenario::Symmetric) ==
          doctest::Approx(0.4062003161104543).epsilon(1e-12));
}

TEST_CASE("h_b at full transmission reaches 2a sinh^2 v") {
    const auto pcs = StateSpec::perelomov(1.0, 1.0);
    CHECK(qfi_closed_form(pcs, 1.0, Scenario::Asymmetric) ==
          doctest::Approx(2.0 * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-14));
    // v = 0 collapses everything
    const auto flat = StateSpec::perelomov(1.0, 0.0);
    for (const double t : {0.0, 0.5, 1.0})
        CHECK(qfi_closed_form(flat, t, Scenario::TwoParam) == 0.0);
}

TEST_CASE("vacuum-port reduction edge cases") {
    const auto stats = closed_form_stats(StateSpec::perelomov(1.0, 1.0));
    const auto m = vacuum_port_moments(stats);

    const auto full = qfi_vacuum_port(m, 1.0);
    CHECK(*full.h_a == 0.0);
    CHECK(full.h_b == doctest::Approx(4.0 * stats.variance).epsilon(1e-15));

    const auto none = qfi_vacuum_port(m, 0.0);
    CHECK(none.h_b == 0.0);

    const auto quarter = qfi_vacuum_port(m, 0.5);  // |alpha|^2 = 0.25
    CHECK(*quarter.h_a == doctest::Approx(0.4073104761114328).epsilon(1e-12));

    InputMoments bad = m;
    bad.b0 = Complex{0.1, 0.0};
    CHECK_THROWS_AS(qfi_vacuum_port(bad, 0.5), std::invalid_argument);
}

TEST_CASE("three routes agree: closed form, vacuum-port reduction, general formulas") {
    for (const double a : {0.5, 1.0, 1.5}) {
        for (const double t : {0.05, 0.31622776601683794, 0.7071067811865476, 0.9486832980505138,
                               1.0}) {
            for (const double v : {0.25, 1.0, 2.0}) {
                const auto spec = StateSpec::perelomov(a, v);
                const auto m = vacuum_port_moments(closed_form_stats(spec));
                const auto vp = qfi_vacuum_port(m, t);
                const auto gen = qfim_general(m, t);
                CHECK(rel_dev(qfi_closed_form(spec, t, Scenario::TwoParam) + 1.0,
                              *vp.h_a + 1.0) <= 1e-12);
                CHECK(rel_dev(qfi_closed_form(spec, t, Scenario::Asymmetric) + 1.0,
                              vp.h_b + 1.0) <= 1e-12);
                CHECK(rel_dev(qfi_closed_form(spec, t, Scenario::Symmetric) + 1.0,
                              vp.h_c + 1.0) <= 1e-12);
                if (gen.h_a) CHECK(rel_dev(*gen.h_a + 1.0, *vp.h_a + 1.0) <= 1e-12);
                CHECK(rel_dev(gen.h_b + 1.0, vp.h_b + 1.0) <= 1e-12);
                CHECK(rel_dev(gen.h_c + 1.0, vp.h_c + 1.0) <= 1e-12);
            }
            for (const double xm : {0.5, 1.0, 2.0}) {
                const auto spec = StateSpec::barut_girardello(a, xm);
                const auto m = vacuum_port_moments(closed_form_stats(spec));
                const auto vp = qfi_vacuum_port(m, t);
                CHECK(rel_dev(qfi_closed_form(spec, t, Scenario::TwoParam) + 1.0,
                              *vp.h_a + 1.0) <= 1e-12);
                CHECK(rel_dev(qfi_closed_form(spec, t, Scenario::Asymmetric) + 1.0,
                              vp.h_b + 1.0) <= 1e-12);
                CHECK(rel_dev(qfi_closed_form(spec, t, Scenario::Symmetric) + 1.0,
                              vp.h_c + 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("general element formulas hold for a non-vacuum port 0") {
    const auto c0 = pcs_amplitudes(StateSpec::perelomov(1.0, 0.8, 0.6), 70);
    const auto c1 = bgcs_amplitudes(StateSpec::barut_girardello(1.5, 1.1, 1.9), 70);
    const auto m = InputMoments::from_amplitudes(c0, c1);
    CHECK(!m.port0_is_vacuum());
    const auto input = product_state(c0, c1, 72);
    for (const double t : {0.3, 0.7071067811865476, 0.9}) {
        const auto numeric =
            oracle::generator_covariance(oracle::apply_beam_splitter(input, t));
        const auto closed = qfim_general(m, t);
        CHECK(rel_dev(closed.h_ss, numeric.h_ss) <= 1e-10);
        CHECK(rel_dev(closed.h_dd, numeric.h_dd) <= 1e-10);
        CHECK(rel_dev(closed.h_sd, numeric.h_sd) <= 1e-10);
    }
}

TEST_CASE("h_b is quadratic in |alpha|^2") {
    const auto m = vacuum_port_moments(closed_form_stats(StateSpec::perelomov(1.0, 1.0)));
    // h_b(x) = 4 <g1> x - 4 (<g1> - Var g1) x^2 with x = |alpha|^2; recover the
    // two coefficients from two samples and predict the rest.
    const auto h_b_at = [&](double x) { return qfi_vacuum_port(m, std::sqrt(x)).h_b; };
    const double x1 = 0.2, x2 = 0.8;
    const double quad = (h_b_at(x2) / x2 - h_b_at(x1) / x1) / (x2 - x1);
    const double lin = h_b_at(x1) / x1 - quad * x1;
    for (double x = 0.05; x <= 1.0; x += 0.05)
        CHECK(std::abs(h_b_at(x) - (lin * x + quad * x * x)) <= 1e-10);
}

TEST_CASE("optimal transmission for the asymmetric scenario") {
    // Poisson-like: variance equals the mean -> full transmission.
    InputMoments poisson;
    poisson.mean_g1 = 2.0;
    poisson.var_g1 = 2.0;
    const auto p = optimal_transmission_b(poisson);
    CHECK(p.alpha_opt == 1.0);
    CHECK(p.h_max == doctest::Approx(8.0).epsilon(1e-15));

    // Perelomov(1,1) is super-Poissonian enough to stay on the alpha=1 branch.
    const auto m = vacuum_port_moments(closed_form_stats(StateSpec::perelomov(1.0, 1.0)));
    const auto r = optimal_transmission_b(m);
    CHECK(r.alpha_opt == 1.0);
    CHECK(r.h_max == doctest::Approx(2.762195691083631).epsilon(1e-12));

    // Sub-Poissonian synthetic case: interior optimum.
    InputMoments sub;
    sub.mean_g1 = 1.0;
    sub.var_g1 = 0.25;
    const auto s = optimal_transmission_b(sub);
    CHECK(s.alpha_opt == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(s.h_max == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    InputMoments empty;
    CHECK_THROWS_AS(optimal_transmission_b(empty), std::invalid_argument);
}

TEST_CASE("shot-noise limit") {
    CHECK(snl(1.0) == 1.0);
    CHECK(snl(100.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(snl(0.5430806348152437) == doctest::Approx(1.3569624860015788).epsilon(1e-12));
    CHECK_THROWS_AS(snl(0.0), std::domain_error);
}
