#include "su11/fock_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>

#include <cmath>
#include <stdexcept>

#include "su11/errors.hpp"

namespace su11::oracle {

TwoModeState::TwoModeState(int cutoff) : cutoff(cutoff) {
    if (cutoff < 1) throw std::invalid_argument("TwoModeState: cutoff must be >= 1");
    amps.assign(static_cast<size_t>(cutoff + 1) * (cutoff + 1), Complex{0.0, 0.0});
}

double TwoModeState::norm_sq() const {
    double s = 0.0;
    for (const auto& c : amps) s += std::norm(c);
    return s;
}

void BeamSplitterPair::validate() const {
    if (!(t1_mag >= 0.0 && t1_mag <= 1.0) || !(t2_mag >= 0.0 && t2_mag <= 1.0))
        throw std::invalid_argument("BeamSplitterPair: magnitudes must lie in [0, 1]");
}

PhaseConfig PhaseConfig::two_param(double theta1, double theta2) {
    return {qfi::Scenario::TwoParam, theta1, theta2};
}
PhaseConfig PhaseConfig::asymmetric(double theta) {
    return {qfi::Scenario::Asymmetric, theta, 0.0};
}
PhaseConfig PhaseConfig::symmetric(double theta) {
    return {qfi::Scenario::Symmetric, 0.5 * theta, -0.5 * theta};
}

TwoModeState build_input(const StateSpec& spec, int cutoff) {
    const FockAmplitudes single = fock_amplitudes(spec, cutoff);
    TwoModeState state(cutoff);
    for (int g = 0; g <= cutoff; ++g) state.at(0, g) = single.amps[g];
    return state;
}

struct BeamSplitterUnitary::Impl {
    int cutoff;
    // One unitary per total-photon block n = 0..2*cutoff; blocks are indexed
    // by k = photons in slot B, restricted to the grid square.
    std::vector<Eigen::MatrixXcd> blocks;
};

BeamSplitterUnitary::BeamSplitterUnitary(int cutoff, double t_mag)
    : impl_(std::make_unique<Impl>()) {
    if (cutoff < 1) throw std::invalid_argument("BeamSplitterUnitary: cutoff must be >= 1");
    if (!(t_mag >= 0.0 && t_mag <= 1.0))
        throw std::invalid_argument("BeamSplitterUnitary: transmission must lie in [0, 1]");
    impl_->cutoff = cutoff;
    const double tau = std::acos(t_mag);
    impl_->blocks.reserve(2 * cutoff + 1);
    for (int n = 0; n <= 2 * cutoff; ++n) {
        const int k_lo = std::max(0, n - cutoff);
        const int k_hi = std::min(n, cutoff);
        const int dim = k_hi - k_lo + 1;
        if (dim <= 0) {
            impl_->blocks.emplace_back();
            continue;
        }
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i + 1 < dim; ++i) {
            const int k = k_lo + i;
            // couples |n-k, k> and |n-k-1, k+1>
            gen(i, i + 1) = gen(i + 1, i) = std::sqrt((n - k) * (k + 1.0));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gen);
        const Eigen::VectorXd& w = es.eigenvalues();
        const Eigen::MatrixXd& v = es.eigenvectors();
        Eigen::VectorXcd phases(dim);
        for (int i = 0; i < dim; ++i) phases(i) = std::polar(1.0, tau * w(i));
        impl_->blocks.emplace_back(v.cast<Complex>() * phases.asDiagonal() *
                                   v.transpose().cast<Complex>());
    }
}

BeamSplitterUnitary::~BeamSplitterUnitary() = default;
BeamSplitterUnitary::BeamSplitterUnitary(BeamSplitterUnitary&&) noexcept = default;
BeamSplitterUnitary& BeamSplitterUnitary::operator=(BeamSplitterUnitary&&) noexcept = default;

TwoModeState BeamSplitterUnitary::apply(const TwoModeState& state) const {
    if (state.cutoff != impl_->cutoff)
        throw std::invalid_argument("BeamSplitterUnitary: cutoff mismatch");
    const int cutoff = state.cutoff;
    TwoModeState out(cutoff);
    Eigen::VectorXcd vec;
    for (int n = 0; n <= 2 * cutoff; ++n) {
        const int k_lo = std::max(0, n - cutoff);
        const int k_hi = std::min(n, cutoff);
        const int dim = k_hi - k_lo + 1;
        vec.resize(dim);
        for (int i = 0; i < dim; ++i) vec(i) = state.at(n - (k_lo + i), k_lo + i);
        vec = impl_->blocks[n] * vec;
        for (int i = 0; i < dim; ++i) out.at(n - (k_lo + i), k_lo + i) = vec(i);
    }
    return out;
}

TwoModeState apply_beam_splitter(const TwoModeState& state, double t_mag) {
    return BeamSplitterUnitary(state.cutoff, t_mag).apply(state);
}

TwoModeState apply_phases(const TwoModeState& state, const PhaseConfig& phases) {
    TwoModeState out(state.cutoff);
    std::vector<Complex> phase_a(state.cutoff + 1), phase_b(state.cutoff + 1);
    for (int n = 0; n <= state.cutoff; ++n) {
        phase_a[n] = std::polar(1.0, -phases.theta2 * n);  // slot A = mode 2
        phase_b[n] = std::polar(1.0, -phases.theta1 * n);  // slot B = mode 3
    }
    for (int n0 = 0; n0 <= state.cutoff; ++n0)
        for (int n1 = 0; n1 <= state.cutoff; ++n1)
            out.at(n0, n1) = state.at(n0, n1) * phase_a[n0] * phase_b[n1];
    return out;
}

namespace {

// In-place ladder action on a padded scratch grid.
void apply_ladder(std::vector<Complex>& grid, int side, const LadderOp& op) {
    const auto idx = [side](int n0, int n1) { return n0 * side + n1; };
    if (op.mode == 0) {
        if (op.dagger) {
            for (int n0 = side - 1; n0 > 0; --n0)
                for (int n1 = 0; n1 < side; ++n1)
                    grid[idx(n0, n1)] = std::sqrt(static_cast<double>(n0)) * grid[idx(n0 - 1, n1)];
            for (int n1 = 0; n1 < side; ++n1) grid[idx(0, n1)] = 0.0;
        } else {
            for (int n0 = 0; n0 + 1 < side; ++n0)
                for (int n1 = 0; n1 < side; ++n1)
                    grid[idx(n0, n1)] = std::sqrt(n0 + 1.0) * grid[idx(n0 + 1, n1)];
            for (int n1 = 0; n1 < side; ++n1) grid[idx(side - 1, n1)] = 0.0;
        }
    } else {
        if (op.dagger) {
            for (int n0 = 0; n0 < side; ++n0)
                for (int n1 = side - 1; n1 > 0; --n1)
                    grid[idx(n0, n1)] = std::sqrt(static_cast<double>(n1)) * grid[idx(n0, n1 - 1)];
            for (int n0 = 0; n0 < side; ++n0) grid[idx(n0, 0)] = 0.0;
        } else {
            for (int n0 = 0; n0 < side; ++n0)
                for (int n1 = 0; n1 + 1 < side; ++n1)
                    grid[idx(n0, n1)] = std::sqrt(n1 + 1.0) * grid[idx(n0, n1 + 1)];
            for (int n0 = 0; n0 < side; ++n0) grid[idx(n0, side - 1)] = 0.0;
        }
    }
}

}  // namespace

Complex expectation(const TwoModeState& state, std::span<const LadderOp> monomial) {
    if (monomial.size() > 4)
        throw std::invalid_argument("expectation: monomial degree exceeds 4");
    int raises = 0;
    for (const auto& op : monomial)
        if (op.dagger) ++raises;

    const int pad = raises;
    const int side = state.cutoff + 1 + pad;
    std::vector<Complex> scratch(static_cast<size_t>(side) * side, Complex{0.0, 0.0});
    for (int n0 = 0; n0 <= state.cutoff; ++n0)
        for (int n1 = 0; n1 <= state.cutoff; ++n1)
            scratch[n0 * side + n1] = state.at(n0, n1);

    for (auto it = monomial.rbegin(); it != monomial.rend(); ++it)
        apply_ladder(scratch, side, *it);

    Complex result{0.0, 0.0};
    for (int n0 = 0; n0 <= state.cutoff; ++n0)
        for (int n1 = 0; n1 <= state.cutoff; ++n1)
            result += std::conj(state.at(n0, n1)) * scratch[n0 * side + n1];
    return result;
}

qfi::QfimResult generator_covariance(const TwoModeState& post_bs1) {
    const int cutoff = post_bs1.cutoff;
    double e2 = 0.0, e3 = 0.0, e22 = 0.0, e33 = 0.0, e23 = 0.0;
    for (int n0 = 0; n0 <= cutoff; ++n0) {
        for (int n1 = 0; n1 <= cutoff; ++n1) {
            const double p = std::norm(post_bs1.at(n0, n1));
            e2 += n0 * p;
            e3 += n1 * p;
            e22 += static_cast<double>(n0) * n0 * p;
            e33 += static_cast<double>(n1) * n1 * p;
            e23 += static_cast<double>(n0) * n1 * p;
        }
    }
    const double var2 = e22 - e2 * e2;
    const double var3 = e33 - e3 * e3;
    const double cov = e23 - e2 * e3;
    // H_ss = Var(g2+g3), H_dd = Var(g2-g3), H_sd = Var g2 - Var g3
    return qfi::QfimResult::from_matrix(var2 + var3 + 2.0 * cov, var2 + var3 - 2.0 * cov,
                                        var2 - var3);
}

ObservableStats output_observable_stats(const TwoModeState& output, const Observable& obs) {
    const int cutoff = output.cutoff;
    switch (obs.kind) {
        case ObservableKind::IntensityDifference: {
            double e = 0.0, e2 = 0.0;
            for (int n0 = 0; n0 <= cutoff; ++n0)
                for (int n1 = 0; n1 <= cutoff; ++n1) {
                    const double p = std::norm(output.at(n0, n1));
                    const double d = static_cast<double>(n0) - n1;
                    e += d * p;
                    e2 += d * d * p;
                }
            return {e, e2 - e * e};
        }
        case ObservableKind::SingleModeIntensity: {
            double e = 0.0, e2 = 0.0;
            for (int n0 = 0; n0 <= cutoff; ++n0)
                for (int n1 = 0; n1 <= cutoff; ++n1) {
                    const double p = std::norm(output.at(n0, n1));
                    e += n0 * p;
                    e2 += static_cast<double>(n0) * n0 * p;
                }
            return {e, e2 - e * e};
        }
        case ObservableKind::Homodyne: {
            // X = Re{e^{-i theta_L} b4}: <X> and <X^2> from <b>, <b^2>, <g>
            // of slot A.
            Complex b{0.0, 0.0}, b2{0.0, 0.0};
            double g = 0.0;
            for (int n0 = 1; n0 <= cutoff; ++n0)
                for (int n1 = 0; n1 <= cutoff; ++n1)
                    b += std::conj(output.at(n0 - 1, n1)) * output.at(n0, n1) *
                         std::sqrt(static_cast<double>(n0));
            for (int n0 = 2; n0 <= cutoff; ++n0)
                for (int n1 = 0; n1 <= cutoff; ++n1)
                    b2 += std::conj(output.at(n0 - 2, n1)) * output.at(n0, n1) *
                          std::sqrt(n0 * (n0 - 1.0));
            for (int n0 = 0; n0 <= cutoff; ++n0)
                for (int n1 = 0; n1 <= cutoff; ++n1)
                    g += n0 * std::norm(output.at(n0, n1));
            const Complex ph = std::polar(1.0, -obs.theta_L);
            const double mean = (ph * b).real();
            const double mean_sq = 0.5 * (ph * ph * b2).real() + 0.5 * g + 0.25;
            return {mean, mean_sq - mean * mean};
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

PhaseConfig phases_for(qfi::Scenario scenario, double theta) {
    switch (scenario) {
        case qfi::Scenario::Asymmetric:
            return PhaseConfig::asymmetric(theta);
        case qfi::Scenario::Symmetric:
            return PhaseConfig::symmetric(theta);
        case qfi::Scenario::TwoParam:
            throw std::invalid_argument(
                "numeric_sensitivity: scenario must fix a single phase parameter");
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double numeric_sensitivity(const StateSpec& spec, const BeamSplitterPair& splitters,
                           const Observable& obs, qfi::Scenario scenario, double theta,
                           double dtheta, std::optional<int> cutoff_override) {
    splitters.validate();
    if (!(dtheta >= 1e-6 && dtheta <= 1e-3))
        throw std::invalid_argument("numeric_sensitivity: dtheta must lie in [1e-6, 1e-3]");

    // Beam splitters conserve total photon number, so the input support
    // bounds everything; +2 headroom guards the moment monomials.
    const int cutoff = cutoff_override.value_or(auto_cutoff(spec) + 2);
    const TwoModeState input = build_input(spec, cutoff);
    const BeamSplitterUnitary bs1(cutoff, splitters.t1_mag);
    const BeamSplitterUnitary bs2(cutoff, splitters.t2_mag);
    const TwoModeState after_bs1 = bs1.apply(input);

    const auto stats_at = [&](double th) {
        return output_observable_stats(bs2.apply(apply_phases(after_bs1, phases_for(scenario, th))),
                                       obs);
    };

    const ObservableStats center = stats_at(theta);
    const double d_coarse =
        (stats_at(theta + dtheta).mean - stats_at(theta - dtheta).mean) / (2.0 * dtheta);
    const double d_fine =
        (stats_at(theta + 0.5 * dtheta).mean - stats_at(theta - 0.5 * dtheta).mean) / dtheta;
    const double deriv = (4.0 * d_fine - d_coarse) / 3.0;

    const double floor = 1e-9 * (1.0 + std::abs(center.mean));
    if (std::abs(deriv) <= floor)
        throw DerivativeVanishes("numeric_sensitivity: |d<S>/dtheta| below resolvable floor");
    return std::sqrt(std::max(center.variance, 0.0)) / std::abs(deriv);
}

}  // namespace su11::oracle
