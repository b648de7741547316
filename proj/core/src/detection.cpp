#include "su11/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "su11/errors.hpp"

namespace su11::detection {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_magnitudes(double t1, double t2) {
    if (!(t1 >= 0.0 && t1 <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0))
        throw std::invalid_argument("splitter magnitudes must lie in [0, 1]");
}

void check_squeeze(const StateSpec& spec) {
    if (spec.kind == StateKind::Perelomov && spec.squeeze_v > kMaxSqueeze)
        throw std::invalid_argument("squeeze_v exceeds the supported range (v <= 20)");
}

double qcrb_for(const StateSpec& spec, double t1, qfi::Scenario scenario) {
    const double h = qfi::qfi_closed_form(spec, t1, scenario);
    if (!(h > 0.0)) throw DerivativeVanishes("QCRB undefined: the scenario QFI vanishes");
    return 1.0 / std::sqrt(h);
}

// nu and <b^2> series share the summation skeleton: both are
// sum_g w(g) x^g with super-geometrically shrinking terms.
double sum_series(double first_log_term, double log_x, int g_start,
                  double (*log_weight)(double, int), double a,
                  const specfun::SeriesTolerance& tol) {
    double sum = 0.0;
    for (int g = g_start; g < g_start + tol.max_terms; ++g) {
        const double term = std::exp(first_log_term + g * log_x + log_weight(a, g));
        sum += term;
        if (g > g_start + 3 && term < tol.rel_tol * sum) return sum;
    }
    throw SeriesNonConvergence("homodyne series did not converge", sum, tol.max_terms);
}

double pcs_nu_weight(double a, int g) {
    using specfun::log_gamma;
    return 0.5 * (log_gamma(g + 2.0 * a) + log_gamma(g + 2.0 * a - 1.0)) - log_gamma(2.0 * a) -
           log_gamma(static_cast<double>(g));
}

double pcs_bsq_weight(double a, int g) {
    using specfun::log_gamma;
    return 0.5 * (log_gamma(g + 2.0 * a) + log_gamma(g + 2.0 * a - 2.0)) - log_gamma(2.0 * a) -
           log_gamma(g - 1.0);
}

double bgcs_nu_weight(double a, int g) {
    using specfun::log_gamma;
    return -log_gamma(static_cast<double>(g)) -
           0.5 * (log_gamma(g + 2.0 * a) + log_gamma(g + 2.0 * a - 1.0));
}

double bgcs_bsq_weight(double a, int g) {
    using specfun::log_gamma;
    return -log_gamma(g - 1.0) -
           0.5 * (log_gamma(g + 2.0 * a) + log_gamma(g + 2.0 * a - 2.0));
}

}  // namespace

DifCoefficients dif_coefficients(double t1, double t2, double theta) {
    check_magnitudes(t1, t2);
    const double s1 = std::sqrt(1.0 - t1 * t1);
    const double s2 = std::sqrt(1.0 - t2 * t2);
    const double mix = t1 * s2 + s1 * t2;
    DifCoefficients co;
    co.delta_a = 1.0 - 2.0 * mix * mix + 4.0 * (t1 * s1) * (t2 * s2) * (1.0 - std::cos(theta));
    co.delta_b = 2.0 * kI *
                     (t1 * s1 * (1.0 - 2.0 * t2 * t2) +
                      (1.0 - 2.0 * t1 * t1) * t2 * s2 * std::cos(theta)) +
                 2.0 * t2 * s2 * std::sin(theta);
    return co;
}

SingCoefficients sing_coefficients(double t1, double t2, double theta) {
    check_magnitudes(t1, t2);
    const double s1 = std::sqrt(1.0 - t1 * t1);
    const double s2 = std::sqrt(1.0 - t2 * t2);
    const double tt = t1 * t2;
    const double ss = s1 * s2;
    SingCoefficients co;
    co.delta0 = tt * tt + ss * ss - 2.0 * tt * ss * std::cos(theta);
    co.delta1 = (t1 * s2) * (t1 * s2) + (t2 * s1) * (t2 * s1) + 2.0 * tt * ss * std::cos(theta);
    // alpha* beta = i|alpha beta|, alpha'* beta' = i|alpha' beta'|
    co.delta3 = kI * t1 * s1 * (2.0 * t2 * t2 - 1.0) +
                kI * t2 * s2 *
                    (t1 * t1 * std::polar(1.0, -theta) - s1 * s1 * std::polar(1.0, theta));
    return co;
}

HomodyneSeries homodyne_series(const StateSpec& spec, const specfun::SeriesTolerance& tol) {
    spec.validate();
    tol.validate();
    check_squeeze(spec);
    HomodyneSeries hs;
    switch (spec.kind) {
        case StateKind::Vacuum:
            return hs;
        case StateKind::Perelomov: {
            const double a = spec.bargmann_a;
            const double t = std::tanh(0.5 * spec.squeeze_v);
            if (t == 0.0) return hs;
            const double log_x = 2.0 * std::log(t);
            const double log_norm = 2.0 * a * std::log1p(-t * t);
            const double nu0 = sum_series(log_norm - std::log(t), log_x, 1, pcs_nu_weight, a, tol);
            const double bsq =
                sum_series(log_norm - 2.0 * std::log(t), log_x, 2, pcs_bsq_weight, a, tol);
            hs.mu = bsq - nu0 * nu0;
            hs.nu = std::polar(nu0, -spec.phase_phi);
            hs.g_bar = a * (std::cosh(spec.squeeze_v) - 1.0);
            return hs;
        }
        case StateKind::BarutGirardello: {
            const double a = spec.bargmann_a;
            const double t = spec.xi_mag;
            if (t == 0.0) return hs;
            const int order = static_cast<int>(std::lround(2.0 * a - 1.0));
            const double log_i = std::log(specfun::bessel_i(order, 2.0 * t));
            const double log_x = 2.0 * std::log(t);
            const double nu0 =
                sum_series((2.0 * a - 2.0) * std::log(t) - log_i, log_x, 1, bgcs_nu_weight, a, tol);
            const double bsq =
                sum_series((2.0 * a - 3.0) * std::log(t) - log_i, log_x, 2, bgcs_bsq_weight, a, tol);
            hs.mu = bsq - nu0 * nu0;
            hs.nu = std::polar(nu0, spec.xi_phase);
            hs.g_bar = t * specfun::bessel_ratio(order, 2.0 * t);
            return hs;
        }
    }
    throw std::logic_error("unreachable");
}

SensitivityPoint sensitivity_dif(const StateSpec& spec, double t1, double t2, double theta) {
    check_magnitudes(t1, t2);
    check_squeeze(spec);
    const PhotonStatistics stats = closed_form_stats(spec);
    const double s1 = std::sqrt(1.0 - t1 * t1);
    const double s2 = std::sqrt(1.0 - t2 * t2);
    const double prod = t1 * s1 * t2 * s2;
    if (prod <= 1e-12)
        throw DerivativeVanishes("sensitivity_dif: a splitter magnitude is 0 or 1");
    if (std::abs(std::sin(theta)) < 1e-12)
        throw DerivativeVanishes("sensitivity_dif: sin(theta) = 0");
    if (!(stats.mean > 0.0))
        throw DerivativeVanishes("sensitivity_dif: zero mean photon number");

    const DifCoefficients co = dif_coefficients(t1, t2, theta);
    const double var_g =
        co.delta_a * co.delta_a * stats.variance + std::norm(co.delta_b) * stats.mean;
    const double dtheta =
        std::sqrt(var_g) / (4.0 * prod * std::abs(std::sin(theta)) * stats.mean);
    return {Scheme::IntensityDifference, theta, dtheta,
            qcrb_for(spec, t1, qfi::Scenario::TwoParam)};
}

SensitivityPoint sensitivity_sing(const StateSpec& spec, double t1, double t2, double theta) {
    check_magnitudes(t1, t2);
    check_squeeze(spec);
    const PhotonStatistics stats = closed_form_stats(spec);
    const double s1 = std::sqrt(1.0 - t1 * t1);
    const double s2 = std::sqrt(1.0 - t2 * t2);
    const double prod = t1 * s1 * t2 * s2;
    if (prod <= 1e-12)
        throw DerivativeVanishes("sensitivity_sing: a splitter magnitude is 0 or 1");
    if (std::abs(std::sin(theta)) < 1e-12)
        throw DerivativeVanishes("sensitivity_sing: sin(theta) = 0");
    if (!(stats.mean > 0.0))
        throw DerivativeVanishes("sensitivity_sing: zero mean photon number");

    const SingCoefficients co = sing_coefficients(t1, t2, theta);
    const double var_g4 =
        co.delta1 * co.delta1 * stats.variance + std::norm(co.delta3) * stats.mean;
    const double dtheta =
        std::sqrt(var_g4) / (2.0 * prod * std::abs(std::sin(theta)) * stats.mean);
    return {Scheme::SingleMode, theta, dtheta, qcrb_for(spec, t1, qfi::Scenario::TwoParam)};
}

SensitivityPoint sensitivity_hom(const StateSpec& spec, double t1, double t2, double theta,
                                 qfi::Scenario scenario, std::optional<double> theta_L,
                                 const specfun::SeriesTolerance& tol) {
    check_magnitudes(t1, t2);
    if (scenario == qfi::Scenario::TwoParam)
        throw std::invalid_argument("sensitivity_hom: scenario must be Asymmetric or Symmetric");
    const HomodyneSeries hs = homodyne_series(spec, tol);
    if (!(std::abs(hs.nu) > 0.0))
        throw DerivativeVanishes("sensitivity_hom: <b1> vanishes for this state");

    const double s1 = std::sqrt(1.0 - t1 * t1);
    const double s2 = std::sqrt(1.0 - t2 * t2);
    const Complex alpha{t1, 0.0}, beta{0.0, s1};
    const Complex alpha_p{t2, 0.0}, beta_p{0.0, s2};
    const double th_l = theta_L.value_or(spec.phase_phi);

    const bool symmetric = scenario == qfi::Scenario::Symmetric;
    if (symmetric && std::abs(t2 * s1 - t1 * s2) <= 1e-12)
        throw ConfigurationDegenerate(
            "sensitivity_hom: |alpha' beta| = |alpha beta'| kills the symmetric-scenario signal");

    const double th2 = symmetric ? -0.5 * theta : 0.0;
    const Complex y = 0.5 * std::polar(1.0, -(th_l + th2)) *
                      (alpha * beta_p * std::polar(1.0, -theta) + alpha_p * beta);
    const Complex phase = hs.nu / std::abs(hs.nu);
    const Complex var_b1 = phase * phase * hs.mu;
    const double var_x = 0.25 + 2.0 * (y * y * var_b1).real() +
                         2.0 * std::norm(y) * (hs.g_bar - std::norm(hs.nu));

    double deriv;
    if (symmetric) {
        deriv = 0.5 * (kI * std::polar(1.0, -th_l) *
                       (beta * alpha_p * std::polar(1.0, 0.5 * theta) -
                        alpha * beta_p * std::polar(1.0, -0.5 * theta)) *
                       hs.nu)
                          .real();
    } else {
        deriv = (-kI * std::polar(1.0, -(th_l + theta)) * beta_p * alpha * hs.nu).real();
    }
    if (std::abs(deriv) <= 1e-12 * (1.0 + std::abs(hs.nu)))
        throw DerivativeVanishes("sensitivity_hom: |d<X>/dtheta| below resolvable floor");

    const qfi::Scenario bound_scenario =
        symmetric ? qfi::Scenario::Symmetric : qfi::Scenario::Asymmetric;
    return {symmetric ? Scheme::HomodyneC : Scheme::HomodyneB, theta,
            std::sqrt(std::max(var_x, 0.0)) / std::abs(deriv),
            qcrb_for(spec, t1, bound_scenario)};
}

double performance_ratio(const StateSpec& spec_p, const StateSpec& spec_b, Scheme scheme,
                         double t1, double t2, double theta) {
    const auto eval = [&](const StateSpec& s) {
        switch (scheme) {
            case Scheme::IntensityDifference:
                return sensitivity_dif(s, t1, t2, theta).delta_theta;
            case Scheme::SingleMode:
                return sensitivity_sing(s, t1, t2, theta).delta_theta;
            case Scheme::HomodyneB:
                return sensitivity_hom(s, t1, t2, theta, qfi::Scenario::Asymmetric).delta_theta;
            case Scheme::HomodyneC:
                return sensitivity_hom(s, t1, t2, theta, qfi::Scenario::Symmetric).delta_theta;
        }
        throw std::logic_error("unreachable");
    };
    return eval(spec_p) / eval(spec_b);
}

}  // namespace su11::detection
