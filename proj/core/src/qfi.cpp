#include "su11/qfi.hpp"

#include <cmath>
#include <stdexcept>

namespace su11::qfi {

namespace {

struct SingleModeMoments {
    double mean = 0.0, var = 0.0;
    Complex b{}, b_sq{}, g_b{};
};

SingleModeMoments mode_moments(const FockAmplitudes& f) {
    SingleModeMoments m;
    const auto& c = f.amps;
    const int n = static_cast<int>(c.size());
    double e2 = 0.0;
    for (int g = 0; g < n; ++g) {
        const double p = std::norm(c[g]);
        m.mean += g * p;
        e2 += static_cast<double>(g) * g * p;
    }
    m.var = e2 - m.mean * m.mean;
    for (int g = 0; g + 1 < n; ++g) {
        const Complex step = std::conj(c[g]) * c[g + 1] * std::sqrt(g + 1.0);
        m.b += step;
        m.g_b += static_cast<double>(g) * step;
    }
    for (int g = 0; g + 2 < n; ++g)
        m.b_sq += std::conj(c[g]) * c[g + 2] * std::sqrt((g + 1.0) * (g + 2.0));
    return m;
}

void check_transmission(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("transmission magnitude must lie in [0, 1]");
}

std::optional<double> bound_of(double h) {
    if (h > 0.0) return 1.0 / std::sqrt(h);
    return std::nullopt;
}

}  // namespace

QfimResult QfimResult::from_matrix(double h_ss, double h_dd, double h_sd) {
    QfimResult r;
    r.h_ss = h_ss;
    r.h_dd = h_dd;
    r.h_sd = h_sd;
    if (h_ss > 0.0) r.h_a = h_dd - h_sd * h_sd / h_ss;
    r.h_b = h_dd + h_ss - 2.0 * h_sd;
    r.h_c = 0.5 * (h_ss + h_dd);
    if (r.h_a) r.qcrb_a = bound_of(*r.h_a);
    r.qcrb_b = bound_of(r.h_b);
    r.qcrb_c = bound_of(r.h_c);
    return r;
}

InputMoments InputMoments::from_amplitudes(const FockAmplitudes& port0,
                                           const FockAmplitudes& port1) {
    const SingleModeMoments m0 = mode_moments(port0);
    const SingleModeMoments m1 = mode_moments(port1);
    InputMoments m;
    m.mean_g0 = m0.mean;
    m.var_g0 = m0.var;
    m.b0 = m0.b;
    m.b0_sq = m0.b_sq;
    m.g_b0 = m0.g_b;
    m.mean_g1 = m1.mean;
    m.var_g1 = m1.var;
    m.b1 = m1.b;
    m.b1_sq = m1.b_sq;
    m.g_b1 = m1.g_b;
    return m;
}

bool InputMoments::port0_is_vacuum(double tol) const {
    return std::abs(mean_g0) <= tol && std::abs(var_g0) <= tol && std::abs(b0) <= tol &&
           std::abs(b0_sq) <= tol && std::abs(g_b0) <= tol;
}

QfimResult qfim_general(const InputMoments& m, double t_mag) {
    check_transmission(t_mag);
    const double P = t_mag * t_mag;
    const double A = 2.0 * P - 1.0;          // 2|alpha|^2 - 1
    const double ab = t_mag * std::sqrt(1.0 - P);  // |alpha beta|

    const double h_ss = m.var_g0 + m.var_g1;

    // <b^dag g> = conj(<g b>)
    const Complex d0 = std::conj(m.g_b0) - std::conj(m.b0) * m.mean_g0;  // <b0^dag g0> - <b0^dag><g0>
    const Complex d1 = std::conj(m.g_b1) - std::conj(m.b1) * m.mean_g1;  // <b1^dag g1> - <b1^dag><g1>
    const Complex e0 = m.g_b0 - m.mean_g0 * m.b0;                        // <g0 b0> - <g0><b0>

    const double h_dd =
        A * A * (m.var_g0 + m.var_g1) +
        8.0 * ab * ab *
            (m.mean_g0 * m.mean_g1 - std::norm(m.b0) * std::norm(m.b1) -
             (std::conj(m.b0_sq) * m.b1_sq - std::conj(m.b0) * std::conj(m.b0) * m.b1 * m.b1)
                 .real()) +
        4.0 * ab * ab * (m.mean_g0 + m.mean_g1) -
        8.0 * ab * A * (d0 * m.b1 + m.b0 * d1).imag();

    const double h_sd =
        A * (m.var_g0 - m.var_g1) +
        4.0 * ab * (m.b0 * std::conj(m.b1) + e0 * std::conj(m.b1) + m.b0 * d1).imag();

    return QfimResult::from_matrix(h_ss, h_dd, h_sd);
}

QfimResult qfi_vacuum_port(const InputMoments& m, double t_mag) {
    check_transmission(t_mag);
    if (!m.port0_is_vacuum())
        throw std::invalid_argument("qfi_vacuum_port: port-0 moments are not vacuum");
    const double P = t_mag * t_mag;
    const double Q = 1.0 - P;
    const double ab2 = P * Q;

    QfimResult r;
    r.h_ss = m.var_g1;
    r.h_sd = -(2.0 * P - 1.0) * m.var_g1;
    r.h_dd = (2.0 * P - 1.0) * (2.0 * P - 1.0) * m.var_g1 + 4.0 * ab2 * m.mean_g1;
    r.h_a = 4.0 * ab2 * m.mean_g1;
    r.h_b = 4.0 * P * P * m.var_g1 + 4.0 * ab2 * m.mean_g1;
    r.h_c = (P * P + Q * Q) * m.var_g1 + 2.0 * ab2 * m.mean_g1;
    r.qcrb_a = bound_of(*r.h_a);
    r.qcrb_b = bound_of(r.h_b);
    r.qcrb_c = bound_of(r.h_c);
    return r;
}

double qfi_closed_form(const StateSpec& spec, double t_mag, Scenario scenario) {
    check_transmission(t_mag);
    spec.validate();
    const double P = t_mag * t_mag;
    const double Q = 1.0 - P;
    const double ab2 = P * Q;

    switch (spec.kind) {
        case StateKind::Vacuum:
            return 0.0;
        case StateKind::Perelomov: {
            const double a = spec.bargmann_a;
            const double v = spec.squeeze_v;
            const double ch = std::cosh(v) - 1.0;
            const double sh2 = std::sinh(v) * std::sinh(v);
            switch (scenario) {
                case Scenario::TwoParam:
                    return 4.0 * a * ab2 * ch;
                case Scenario::Asymmetric:
                    return 4.0 * a * P * (0.5 * P * sh2 + Q * ch);
                case Scenario::Symmetric:
                    return 0.5 * a * (P * P + Q * Q) * sh2 + 2.0 * a * ab2 * ch;
            }
            break;
        }
        case StateKind::BarutGirardello: {
            const double xm = spec.xi_mag;
            if (xm == 0.0) return 0.0;
            const double a = spec.bargmann_a;
            const int order = static_cast<int>(std::lround(2.0 * a - 1.0));
            const double i_lo = specfun::bessel_i(order, 2.0 * xm);
            const double i_mid = specfun::bessel_i(order + 1, 2.0 * xm);
            const double i_hi = specfun::bessel_i(order + 2, 2.0 * xm);
            const double X = i_lo * (xm * i_hi + i_mid) - xm * i_mid * i_mid;
            switch (scenario) {
                case Scenario::TwoParam:
                    return 4.0 * xm * ab2 * i_mid / i_lo;
                case Scenario::Asymmetric:
                    return 4.0 * xm / (i_lo * i_lo) * (P * P * X + ab2 * i_lo * i_mid);
                case Scenario::Symmetric:
                    return xm / (i_lo * i_lo) *
                           ((P * P + Q * Q) * X + 2.0 * ab2 * i_lo * i_mid);
            }
            break;
        }
    }
    throw std::logic_error("unreachable");
}

OptimalTransmission optimal_transmission_b(const InputMoments& m) {
    if (!(m.mean_g1 > 0.0))
        throw std::invalid_argument("optimal_transmission_b: degenerate input, <g1> must be positive");
    if (m.var_g1 >= 0.5 * m.mean_g1) return {1.0, 4.0 * m.var_g1};
    const double denom = m.mean_g1 - m.var_g1;
    return {std::sqrt(m.mean_g1 / (2.0 * denom)), m.mean_g1 * m.mean_g1 / denom};
}

double snl(double mean_photons) {
    if (!(mean_photons > 0.0))
        throw std::domain_error("snl: mean photon number must be positive");
    return 1.0 / std::sqrt(mean_photons);
}

}  // namespace su11::qfi
