#pragma once

#include <complex>
#include <vector>

#include "su11/specfun.hpp"

namespace su11 {

using Complex = std::complex<double>;

enum class StateKind { Vacuum, Perelomov, BarutGirardello };

// Declarative description of a single-mode input state. The Bargmann
// index a is restricted to positive half-integers so every Bessel order
// 2a-1, 2a, 2a+1 appearing downstream is a nonnegative integer.
struct StateSpec {
    StateKind kind = StateKind::Vacuum;
    double bargmann_a = 0.5;
    double squeeze_v = 0.0;   // hyperbolic angle (Perelomov)
    double phase_phi = 0.0;   // azimuthal angle (Perelomov)
    double xi_mag = 0.0;      // lowering-operator eigenvalue magnitude (Barut-Girardello)
    double xi_phase = 0.0;

    static StateSpec vacuum();
    static StateSpec perelomov(double a, double v, double phi = 0.0);
    static StateSpec barut_girardello(double a, double xi_mag, double xi_phase = 0.0);

    // Coherent-state parameter: e^{-i phi} tanh(v/2) for Perelomov,
    // |xi| e^{i xi_phase} for Barut-Girardello, 0 for vacuum.
    Complex xi() const;

    void validate() const;
};

// Truncated Fock expansion. tail_mass is a certified upper bound on the
// probability left above the cutoff.
struct FockAmplitudes {
    std::vector<Complex> amps;  // indexed by photon number g = 0..cutoff
    int cutoff = 0;
    double tail_mass = 0.0;

    double norm_sq() const;
};

struct PhotonStatistics {
    double mean = 0.0;
    double variance = 0.0;
};

// Probability allowed above the truncation cutoff.
inline constexpr double kTailTolerance = 1e-12;
inline constexpr int kMaxAutoCutoff = 4096;

// Fock amplitudes of the Perelomov state,
//   c_g = (1-|xi|^2)^a sqrt(Gamma(g+2a)/(g! Gamma(2a))) xi^g.
// Rejects parameters whose tail bound at this cutoff exceeds kTailTolerance.
FockAmplitudes pcs_amplitudes(const StateSpec& spec, int cutoff);

// Fock amplitudes of the Barut-Girardello state,
//   c_g = sqrt(|xi|^(2a-1)/I_{2a-1}(2|xi|)) xi^g / sqrt(g! Gamma(g+2a)).
// xi = 0 is handled as the exact vacuum.
FockAmplitudes bgcs_amplitudes(const StateSpec& spec, int cutoff);

// Dispatch on spec.kind (vacuum included).
FockAmplitudes fock_amplitudes(const StateSpec& spec, int cutoff);

// Smallest power-of-two-ish cutoff whose analytic tail bound is below
// kTailTolerance (doubling search, capped at kMaxAutoCutoff).
int auto_cutoff(const StateSpec& spec);

// A_- |a,g> = sqrt(g(2a+g-1)) |a,g-1> applied to an amplitude vector;
// the result is unnormalized.
FockAmplitudes lowering_apply(const FockAmplitudes& state, double bargmann_a);

// Closed-form mean and variance of the photon number.
PhotonStatistics closed_form_stats(const StateSpec& spec);

}  // namespace su11
