#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "su11/qfi.hpp"
#include "su11/states.hpp"

namespace su11::oracle {

// Complex amplitude grid over the truncated two-mode Fock basis. Slot A
// (first index) follows the port chain 0 -> 2 -> 4, slot B the chain
// 1 -> 3 -> 5 of the interferometer.
struct TwoModeState {
    int cutoff = 0;
    std::vector<Complex> amps;  // row-major, (cutoff+1)^2 entries

    explicit TwoModeState(int cutoff);

    Complex& at(int n0, int n1) { return amps[n0 * (cutoff + 1) + n1]; }
    const Complex& at(int n0, int n1) const { return amps[n0 * (cutoff + 1) + n1]; }
    double norm_sq() const;
};

// Transmission magnitudes of the two beam splitters. The convention
// alpha real, beta = i sqrt(1-|alpha|^2) (so alpha* beta = i|alpha beta|)
// is fixed by the unitary realization below.
struct BeamSplitterPair {
    double t1_mag = 1.0;
    double t2_mag = 1.0;

    void validate() const;
};

struct PhaseConfig {
    qfi::Scenario scenario = qfi::Scenario::TwoParam;
    double theta1 = 0.0;
    double theta2 = 0.0;

    static PhaseConfig two_param(double theta1, double theta2);
    static PhaseConfig asymmetric(double theta);  // theta1 = theta, theta2 = 0
    static PhaseConfig symmetric(double theta);   // theta1 = -theta2 = theta/2
};

// |psi_in> = |0>_0 (x) |spec>_1 on a grid of the given cutoff.
TwoModeState build_input(const StateSpec& spec, int cutoff);

// exp[i tau (b0^dag b1 + b1^dag b0)] with cos tau = t_mag, realized
// block-by-block in total photon number (each block is rotated by the
// eigendecomposition of its tridiagonal generator). Heisenberg picture:
// b -> alpha b0 + beta b1 with alpha = cos tau, beta = i sin tau.
class BeamSplitterUnitary {
public:
    BeamSplitterUnitary(int cutoff, double t_mag);
    ~BeamSplitterUnitary();
    BeamSplitterUnitary(BeamSplitterUnitary&&) noexcept;
    BeamSplitterUnitary& operator=(BeamSplitterUnitary&&) noexcept;

    TwoModeState apply(const TwoModeState& state) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

TwoModeState apply_beam_splitter(const TwoModeState& state, double t_mag);

// Diagonal phase unitary: amps[n2][n3] *= exp(-i theta2 n2) exp(-i theta1 n3)
// (the upper arm, slot B, carries theta1).
TwoModeState apply_phases(const TwoModeState& state, const PhaseConfig& phases);

// One factor of a normally-unordered ladder monomial.
struct LadderOp {
    int mode = 0;  // 0 = slot A, 1 = slot B
    bool dagger = false;
};

// <psi| O_1 O_2 ... O_k |psi> for k <= 4, ops applied right to left.
Complex expectation(const TwoModeState& state, std::span<const LadderOp> monomial);

// H_ij = 4 Cov(G_i, G_j) on the post-BS1 state, with G_s = (g2+g3)/2 and
// G_d = (g2-g3)/2; scenario QFIs derived via QfimResult::from_matrix.
qfi::QfimResult generator_covariance(const TwoModeState& post_bs1);

enum class ObservableKind { IntensityDifference, SingleModeIntensity, Homodyne };

struct Observable {
    ObservableKind kind = ObservableKind::IntensityDifference;
    double theta_L = 0.0;  // homodyne local-oscillator phase
};

struct ObservableStats {
    double mean = 0.0;
    double variance = 0.0;
};

// Mean and variance of the detection observable on the post-BS2 state.
ObservableStats output_observable_stats(const TwoModeState& output, const Observable& obs);

// Finite-difference phase sensitivity Delta theta = sqrt(Var S)/|d<S>/dtheta|,
// central differences with one Richardson extrapolation step. Throws
// DerivativeVanishes when |d<S>/dtheta| <= 1e-9 (1 + |<S>|). The grid cutoff
// defaults to the certified auto cutoff plus two rows of headroom.
double numeric_sensitivity(const StateSpec& spec, const BeamSplitterPair& splitters,
                           const Observable& obs, qfi::Scenario scenario, double theta,
                           double dtheta = 1e-4, std::optional<int> cutoff_override = {});

}  // namespace su11::oracle
