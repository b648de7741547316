#pragma once

#include <optional>

#include "su11/qfi.hpp"
#include "su11/states.hpp"

namespace su11::detection {

enum class Scheme { IntensityDifference, SingleMode, HomodyneB, HomodyneC };

// Coefficients of the intensity-difference variance decomposition,
//   Var G_dif = delta_A^2 (Var g0 + Var g1) + |delta_B|^2 (<g0> + <g1>) + ...
// with delta_A^2 + |delta_B|^2 = 1.
struct DifCoefficients {
    double delta_a = 1.0;
    Complex delta_b{};
};

// Coefficients of <g4> = delta0 <g0> + delta1 <g1> + 2 Re{delta3 ...};
// delta0 + delta1 = 1.
struct SingCoefficients {
    double delta0 = 1.0;
    double delta1 = 0.0;
    Complex delta3{};
};

// Input-mode field moments entering the homodyne variance: nu = <b1>,
// mu = the (real, phase-stripped) value of <b1^2> - <b1>^2, and
// g_bar = <g1>. The complex variance is (nu/|nu|)^2 mu.
struct HomodyneSeries {
    double mu = 0.0;
    Complex nu{};
    double g_bar = 0.0;
};

struct SensitivityPoint {
    Scheme scheme = Scheme::IntensityDifference;
    double theta = 0.0;
    double delta_theta = 0.0;
    double qcrb_ref = 0.0;
};

// Hyperbolic-angle guard: sinh/cosh of anything larger leaves the regime
// every formula here is meant for.
inline constexpr double kMaxSqueeze = 20.0;

DifCoefficients dif_coefficients(double t1, double t2, double theta);
SingCoefficients sing_coefficients(double t1, double t2, double theta);

// The field-moment series for the given state, summed until the next term
// falls below tol.rel_tol of the partial sum.
HomodyneSeries homodyne_series(const StateSpec& spec,
                               const specfun::SeriesTolerance& tol = {});

// Intensity-difference sensitivity (identical for the asymmetric and
// symmetric scenarios); reference bound is the two-parameter QCRB at t1.
SensitivityPoint sensitivity_dif(const StateSpec& spec, double t1, double t2, double theta);

// Single-mode intensity sensitivity at output port 4; same reference bound.
SensitivityPoint sensitivity_sing(const StateSpec& spec, double t1, double t2, double theta);

// Balanced-homodyne sensitivity for scenario b (Asymmetric) or c (Symmetric).
// theta_L defaults to the state's azimuthal phase.
SensitivityPoint sensitivity_hom(const StateSpec& spec, double t1, double t2, double theta,
                                 qfi::Scenario scenario,
                                 std::optional<double> theta_L = std::nullopt,
                                 const specfun::SeriesTolerance& tol = {});

// R = Delta theta(spec_p) / Delta theta(spec_b) for one scheme.
double performance_ratio(const StateSpec& spec_p, const StateSpec& spec_b, Scheme scheme,
                         double t1, double t2, double theta);

}  // namespace su11::detection
