#include "su11/states.hpp"

#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace su11 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

double wrap_angle(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

bool is_half_integer(double a) {
    const double twice = 2.0 * a;
    return a > 0.0 && std::abs(twice - std::round(twice)) < 1e-9;
}

// log of the squared amplitude magnitude at photon number g (state-dependent
// part only; the g-independent normalization is folded in by the caller).
double pcs_log_weight(double a, double log_x, int g) {
    using specfun::log_gamma;
    return g * log_x + log_gamma(g + 2.0 * a) - log_gamma(g + 1.0) - log_gamma(2.0 * a);
}

double bgcs_log_weight(double a, double log_x, int g) {
    using specfun::log_gamma;
    return g * log_x - log_gamma(g + 1.0) - log_gamma(g + 2.0 * a);
}

// Geometric bound on the probability above `cutoff`. `ratio` must be the
// (non-increasing) weight ratio q_{g+1}/q_g evaluated at g = cutoff.
double geometric_tail(double q_cutoff, double ratio) {
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return q_cutoff * ratio / (1.0 - ratio);
}

// Tail bound without materializing the amplitudes.
double tail_bound(const StateSpec& spec, int cutoff) {
    switch (spec.kind) {
        case StateKind::Vacuum:
            return 0.0;
        case StateKind::Perelomov: {
            const double t = std::tanh(0.5 * spec.squeeze_v);
            const double x = t * t;
            if (x == 0.0) return 0.0;
            const double a = spec.bargmann_a;
            const double log_norm = 2.0 * a * std::log1p(-x);
            const double q = std::exp(log_norm + pcs_log_weight(a, std::log(x), cutoff));
            const double ratio = x * (cutoff + 2.0 * a) / (cutoff + 1.0);
            return geometric_tail(q, ratio);
        }
        case StateKind::BarutGirardello: {
            const double xm = spec.xi_mag;
            if (xm == 0.0) return 0.0;
            const double a = spec.bargmann_a;
            const double x = xm * xm;
            const int m = static_cast<int>(std::lround(2.0 * a - 1.0));
            const double log_norm =
                (2.0 * a - 1.0) * std::log(xm) - std::log(specfun::bessel_i(m, 2.0 * xm));
            const double q = std::exp(log_norm + bgcs_log_weight(a, std::log(x), cutoff));
            const double ratio = x / ((cutoff + 1.0) * (cutoff + 2.0 * a));
            return geometric_tail(q, ratio);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

StateSpec StateSpec::vacuum() { return StateSpec{}; }

StateSpec StateSpec::perelomov(double a, double v, double phi) {
    StateSpec s;
    s.kind = StateKind::Perelomov;
    s.bargmann_a = a;
    s.squeeze_v = v;
    s.phase_phi = wrap_angle(phi);
    s.validate();
    return s;
}

StateSpec StateSpec::barut_girardello(double a, double xi_mag, double xi_phase) {
    StateSpec s;
    s.kind = StateKind::BarutGirardello;
    s.bargmann_a = a;
    s.xi_mag = xi_mag;
    s.xi_phase = wrap_angle(xi_phase);
    s.validate();
    return s;
}

Complex StateSpec::xi() const {
    switch (kind) {
        case StateKind::Vacuum:
            return {0.0, 0.0};
        case StateKind::Perelomov:
            return std::polar(std::tanh(0.5 * squeeze_v), -phase_phi);
        case StateKind::BarutGirardello:
            return std::polar(xi_mag, xi_phase);
    }
    throw std::logic_error("unreachable");
}

void StateSpec::validate() const {
    if (kind == StateKind::Vacuum) return;
    if (!is_half_integer(bargmann_a))
        throw std::invalid_argument("StateSpec: Bargmann index must be a positive half-integer");
    if (kind == StateKind::Perelomov && !(squeeze_v >= 0.0))
        throw std::invalid_argument("StateSpec: squeeze_v must be nonnegative");
    if (kind == StateKind::BarutGirardello && !(xi_mag >= 0.0))
        throw std::invalid_argument("StateSpec: xi_mag must be nonnegative");
}

double FockAmplitudes::norm_sq() const {
    double s = 0.0;
    for (const auto& c : amps) s += std::norm(c);
    return s;
}

FockAmplitudes pcs_amplitudes(const StateSpec& spec, int cutoff) {
    spec.validate();
    if (spec.kind != StateKind::Perelomov)
        throw std::invalid_argument("pcs_amplitudes: spec is not a Perelomov state");
    if (cutoff < 1) throw std::invalid_argument("pcs_amplitudes: cutoff must be >= 1");

    FockAmplitudes out;
    out.cutoff = cutoff;
    out.amps.assign(cutoff + 1, Complex{0.0, 0.0});
    out.tail_mass = tail_bound(spec, cutoff);
    if (out.tail_mass > kTailTolerance)
        throw std::invalid_argument(
            "pcs_amplitudes: tail mass " + fmt_sci(out.tail_mass) +
            " exceeds tolerance at cutoff " + std::to_string(cutoff));

    const double a = spec.bargmann_a;
    const Complex xi = spec.xi();
    const double x = std::norm(xi);
    if (x == 0.0) {
        out.amps[0] = 1.0;
        return out;
    }
    const Complex phase = xi / std::abs(xi);
    const double log_norm = a * std::log1p(-x);
    Complex phase_g = 1.0;
    for (int g = 0; g <= cutoff; ++g) {
        out.amps[g] = std::exp(log_norm + 0.5 * pcs_log_weight(a, std::log(x), g)) * phase_g;
        phase_g *= phase;
    }
    return out;
}

FockAmplitudes bgcs_amplitudes(const StateSpec& spec, int cutoff) {
    spec.validate();
    if (spec.kind != StateKind::BarutGirardello)
        throw std::invalid_argument("bgcs_amplitudes: spec is not a Barut-Girardello state");
    if (cutoff < 1) throw std::invalid_argument("bgcs_amplitudes: cutoff must be >= 1");

    FockAmplitudes out;
    out.cutoff = cutoff;
    out.amps.assign(cutoff + 1, Complex{0.0, 0.0});
    out.tail_mass = tail_bound(spec, cutoff);
    if (out.tail_mass > kTailTolerance)
        throw std::invalid_argument(
            "bgcs_amplitudes: tail mass " + fmt_sci(out.tail_mass) +
            " exceeds tolerance at cutoff " + std::to_string(cutoff));

    const double a = spec.bargmann_a;
    const double xm = spec.xi_mag;
    if (xm == 0.0) {
        out.amps[0] = 1.0;
        return out;
    }
    const int m = static_cast<int>(std::lround(2.0 * a - 1.0));
    const double log_norm =
        0.5 * ((2.0 * a - 1.0) * std::log(xm) - std::log(specfun::bessel_i(m, 2.0 * xm)));
    const Complex phase = std::polar(1.0, spec.xi_phase);
    Complex phase_g = 1.0;
    for (int g = 0; g <= cutoff; ++g) {
        out.amps[g] =
            std::exp(log_norm + 0.5 * bgcs_log_weight(a, 2.0 * std::log(xm), g)) * phase_g;
        phase_g *= phase;
    }
    return out;
}

FockAmplitudes fock_amplitudes(const StateSpec& spec, int cutoff) {
    switch (spec.kind) {
        case StateKind::Vacuum: {
            FockAmplitudes out;
            out.cutoff = cutoff;
            out.amps.assign(cutoff + 1, Complex{0.0, 0.0});
            out.amps[0] = 1.0;
            return out;
        }
        case StateKind::Perelomov:
            return pcs_amplitudes(spec, cutoff);
        case StateKind::BarutGirardello:
            return bgcs_amplitudes(spec, cutoff);
    }
    throw std::logic_error("unreachable");
}

int auto_cutoff(const StateSpec& spec) {
    spec.validate();
    if (spec.kind == StateKind::Vacuum) return 1;
    for (int cutoff = 16; cutoff <= kMaxAutoCutoff; cutoff *= 2) {
        if (tail_bound(spec, cutoff) < kTailTolerance) return cutoff;
    }
    throw std::invalid_argument(
        "auto_cutoff: state needs a cutoff beyond " + std::to_string(kMaxAutoCutoff) +
        " to certify the truncation tail");
}

FockAmplitudes lowering_apply(const FockAmplitudes& state, double bargmann_a) {
    if (state.cutoff < 1) throw std::invalid_argument("lowering_apply: cutoff must be >= 1");
    FockAmplitudes out;
    out.cutoff = state.cutoff;
    out.tail_mass = state.tail_mass;
    out.amps.assign(state.amps.size(), Complex{0.0, 0.0});
    for (int g = 0; g + 1 < static_cast<int>(state.amps.size()); ++g) {
        out.amps[g] = std::sqrt((g + 1.0) * (2.0 * bargmann_a + g)) * state.amps[g + 1];
    }
    return out;
}

PhotonStatistics closed_form_stats(const StateSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case StateKind::Vacuum:
            return {0.0, 0.0};
        case StateKind::Perelomov: {
            const double a = spec.bargmann_a;
            const double v = spec.squeeze_v;
            const double sh = std::sinh(v);
            return {a * (std::cosh(v) - 1.0), 0.5 * a * sh * sh};
        }
        case StateKind::BarutGirardello: {
            const double xm = spec.xi_mag;
            if (xm == 0.0) return {0.0, 0.0};
            const double a = spec.bargmann_a;
            const int m = static_cast<int>(std::lround(2.0 * a - 1.0));
            // <N> = |xi| I_{2a}/I_{2a-1}; the variance follows from
            // X = I_{2a-1}[|xi| I_{2a+1} + I_{2a}] - |xi| I_{2a}^2 as
            // Var = |xi| X / I_{2a-1}^2 = <N> (1 + |xi|(r2 - r1)).
            const double r1 = specfun::bessel_ratio(m, 2.0 * xm);
            const double r2 = specfun::bessel_ratio(m + 1, 2.0 * xm);
            const double mean = xm * r1;
            return {mean, mean * (1.0 + xm * (r2 - r1))};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace su11
