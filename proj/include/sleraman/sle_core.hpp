// sle_core.hpp — joint system x bath Liouvillian blocks and their Green's
// functions. The Liouvillian is block diagonal in the vibrational indices: the
// population block carries only the bath generator (plus 2*gamma damping), the
// coherence block adds the bath-dependent vibrational frequencies and gamma.
//
// Coherence block convention: M = -K - i*diag(omega_ca^(s)) - gamma_a*I, so the
// frequency-domain resolvent has poles at positive shifts +omega_ca^(s). This is
// the mirrored (Stokes-positive) form of the block; spectra read directly on a
// positive Raman-shift axis.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sleraman/kinetics.hpp"
#include "sleraman/numerics.hpp"
#include "sleraman/pulses.hpp"
#include "sleraman/units.hpp"

namespace sleraman {

struct VibrationalMode {
    double omega1 = 0.0;  // base frequency omega_ca^(1), rad/s
    double delta = 0.0;   // per-jump shift delta_ca, rad/s
    double gamma = 0.0;   // dephasing gamma_a, rad/s
    double alpha = 1.0;   // polarizability weight alpha_ac
    double mu = 1.0;      // transition dipole weight |V_ag|

    void validate() const {
        if (!(omega1 > 0.0)) throw ValidationError("VibrationalMode: omega1 must be positive");
        if (!(gamma > 0.0)) throw ValidationError("VibrationalMode: gamma must be positive");
    }
};

// omega_ca^(s) = omega_ca^(1) + delta_ca (s-1), s = 1..N.
inline RealVector frequencies_along_chain(const VibrationalMode& mode, int n) {
    if (n < 1) throw DomainError("frequencies_along_chain: need at least one bath state");
    RealVector w(n);
    for (int s = 0; s < n; ++s) w(s) = mode.omega1 + mode.delta * s;
    return w;
}

struct CoherenceBlock {
    ComplexMatrix M; // -K - i diag(omega) - gamma I
};

inline CoherenceBlock coherence_block(const RateMatrix& bath, const VibrationalMode& mode) {
    const RealVector omega = frequencies_along_chain(mode, bath.N);
    CoherenceBlock block;
    block.M = -bath.K.cast<Complex>();
    for (int s = 0; s < bath.N; ++s) block.M(s, s) -= kImag * omega(s) + Complex(mode.gamma, 0.0);
    return block;
}

// G(t) = -i theta(t) exp(M t); zero for t < 0.
inline ComplexMatrix coherence_green_time(const CoherenceBlock& block, double t) {
    const Eigen::Index n = block.M.rows();
    if (t < 0.0) return ComplexMatrix::Zero(n, n);
    return -kImag * expm(ComplexMatrix(block.M * t));
}

// G(w~) = -i (-i w~ I - M)^{-1} = int dt e^{i w~ t} G(t). For N = 1 this is
// 1 / (w~ - omega_ca + i gamma).
inline ComplexMatrix coherence_green_freq(const CoherenceBlock& block, double omegaTilde) {
    const Eigen::Index n = block.M.rows();
    ComplexMatrix a = -kImag * omegaTilde * ComplexMatrix::Identity(n, n) - block.M;
    try {
        return -kImag * lu_inverse(a, "coherence_green_freq");
    } catch (const SingularMatrix&) {
        throw SingularResolvent("coherence_green_freq: resolvent is singular");
    }
}

// Column sums 1^T G(w~) as a vector over bath states; one adjoint solve.
inline ComplexVector coherence_green_colsums(const CoherenceBlock& block, double omegaTilde) {
    const Eigen::Index n = block.M.rows();
    ComplexMatrix a = -kImag * omegaTilde * ComplexMatrix::Identity(n, n) - block.M;
    try {
        return -kImag * lu_solve_ones_row(a);
    } catch (const SingularMatrix&) {
        throw SingularResolvent("coherence_green_colsums: resolvent is singular");
    }
}

struct SLEModel {
    RateMatrix bath;
    std::vector<VibrationalMode> modes;
    PulseSet pulses;
    RealVector p0; // initial bath distribution

    void validate() const {
        if (modes.empty()) throw ValidationError("SLEModel: at least one vibrational mode required");
        for (const auto& m : modes) m.validate();
        pulses.validate();
        if (p0.size() != bath.N) throw ValidationError("SLEModel: p0 dimension mismatch");
        detail::check_probability_vector(p0, "SLEModel");
    }

    double fsrsWeight(std::size_t m) const { return modes[m].alpha * modes[m].alpha * modes[m].mu * modes[m].mu; }
    double taspWeight(std::size_t m) const {
        const double mu2 = modes[m].mu * modes[m].mu;
        return mu2 * mu2;
    }
};

inline SLEModel make_model(RateMatrix bath, std::vector<VibrationalMode> modes, PulseSet pulses,
                           int initialState = 1) {
    SLEModel model;
    model.bath = std::move(bath);
    model.modes = std::move(modes);
    model.pulses = pulses;
    model.p0 = RealVector::Zero(model.bath.N);
    if (initialState < 1 || initialState > model.bath.N)
        throw ValidationError("make_model: initial bath state out of range");
    model.p0(initialState - 1) = 1.0;
    model.validate();
    return model;
}

// Matter correlation F(t1, t2): coherence propagation over t1, population
// propagation over t2, damping e^{-gamma (t1 + 2 t2)}, traced against the
// initial bath distribution. Prefactor (-i)^3 = +i from the three i/hbar's.
inline Complex matter_correlation(const SLEModel& model, double t1, double t2) {
    if (t1 < 0.0 || t2 < 0.0) return {0.0, 0.0};
    const RealVector popPart = expm(RealMatrix(-model.bath.K * t2)) * model.p0;
    Complex total{0.0, 0.0};
    for (std::size_t m = 0; m < model.modes.size(); ++m) {
        const VibrationalMode& mode = model.modes[m];
        const RealVector omega = frequencies_along_chain(mode, model.bath.N);
        ComplexMatrix m0 = -model.bath.K.cast<Complex>();
        for (int s = 0; s < model.bath.N; ++s) m0(s, s) -= kImag * omega(s);
        const ComplexVector coh = expm(ComplexMatrix(m0 * t1)) * popPart.cast<Complex>();
        const double damp = std::exp(-mode.gamma * (t1 + 2.0 * t2));
        total += model.fsrsWeight(m) * damp * coh.sum();
    }
    return kImag * total;
}

} // namespace sleraman
