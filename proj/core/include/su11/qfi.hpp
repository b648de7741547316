#pragma once

#include <optional>

#include "su11/states.hpp"

namespace su11::qfi {

// Phase-shift placement inside the interferometer:
//   TwoParam   - independent shifts in both arms, estimand theta_d = theta1 - theta2
//   Asymmetric - single shift theta in the upper arm (theta1 = theta, theta2 = 0)
//   Symmetric  - opposite shifts theta1 = -theta2 = theta/2
enum class Scenario { TwoParam, Asymmetric, Symmetric };

// Quantum Fisher information matrix over (theta_s, theta_d) together with
// the three scenario QFIs and their Cramer-Rao bounds. h_a is absent when
// h_ss = 0 (the two-parameter reduction divides by it), and a qcrb is
// absent whenever the matching QFI vanishes.
struct QfimResult {
    double h_ss = 0.0;
    double h_dd = 0.0;
    double h_sd = 0.0;
    std::optional<double> h_a;
    double h_b = 0.0;
    double h_c = 0.0;
    std::optional<double> qcrb_a;
    std::optional<double> qcrb_b;
    std::optional<double> qcrb_c;

    // Derive the scenario QFIs and bounds from the matrix elements:
    //   h_a = h_dd - h_sd^2/h_ss,  h_b = h_dd + h_ss - 2 h_sd,
    //   h_c = (h_ss + h_dd)/2 = Var g2 + Var g3.
    static QfimResult from_matrix(double h_ss, double h_dd, double h_sd);
};

// Per-mode moments of a two-mode product input. Cross expectations of the
// form <g b> are stored unconjugated; <b^dag g> follows by conjugation.
struct InputMoments {
    double mean_g0 = 0.0, mean_g1 = 0.0;
    double var_g0 = 0.0, var_g1 = 0.0;
    Complex b0{}, b1{};          // <b>
    Complex b0_sq{}, b1_sq{};    // <b^2>
    Complex g_b0{}, g_b1{};      // <g b>

    static InputMoments from_amplitudes(const FockAmplitudes& port0,
                                        const FockAmplitudes& port1);
    bool port0_is_vacuum(double tol = 1e-14) const;
};

// Full QFIM element formulas for an arbitrary product input (no vacuum
// assumption), transmission |alpha| = t_mag of the first beam splitter.
QfimResult qfim_general(const InputMoments& m, double t_mag);

// Reduction for a vacuum in port 0:
//   h_a = 4|ab|^2 <g1>,  h_b = 4|a|^4 Var g1 + 4|ab|^2 <g1>,
//   h_c = (|a|^4 + |b|^4) Var g1 + 2|ab|^2 <g1>.
QfimResult qfi_vacuum_port(const InputMoments& m, double t_mag);

// Literal closed forms for Perelomov / Barut-Girardello inputs with a
// vacuum in port 0 (trigonometric and Bessel expressions respectively).
double qfi_closed_form(const StateSpec& spec, double t_mag, Scenario scenario);

struct OptimalTransmission {
    double alpha_opt = 1.0;
    double h_max = 0.0;
};

// Transmission maximizing h_b for a vacuum port 0: alpha = 1 when
// Var g1 >= <g1>/2, else alpha^2 = <g1> / (2(<g1> - Var g1)) with
// h_max = <g1>^2 / (<g1> - Var g1).
OptimalTransmission optimal_transmission_b(const InputMoments& m);

// Shot-noise limit 1/sqrt(<N>).
double snl(double mean_photons);

}  // namespace su11::qfi
