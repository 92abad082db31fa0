// overlap.hpp — probe-window overlap integrals: Gaussian spectrum against the
// simple poles of the population resolvent. The analytic route reduces each
// pole to one Faddeeva evaluation; the quadrature route integrates the same
// integrand adaptively and never touches the eigendecomposition.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sleraman/faddeeva.hpp"
#include "sleraman/kinetics.hpp"
#include "sleraman/numerics.hpp"
#include "sleraman/pulses.hpp"
#include "sleraman/quadrature.hpp"

namespace sleraman {

enum class OverlapPath { Analytic, Quadrature };

// Partial-fraction form of a damped population component:
// f(Delta) = sum_j weights_j * (-i) / (i Delta + poles_j), Re poles_j > 0.
struct OverlapKernel {
    ComplexVector poles;
    ComplexVector weights;

    void validate() const {
        if (poles.size() != weights.size())
            throw DimensionMismatch("OverlapKernel: poles/weights size mismatch");
        for (Eigen::Index j = 0; j < poles.size(); ++j)
            if (!(poles(j).real() > 0.0))
                throw DomainError("OverlapKernel: pole with nonpositive real part");
    }

    Complex evaluate(double delta) const {
        Complex acc{0.0, 0.0};
        for (Eigen::Index j = 0; j < poles.size(); ++j)
            acc += weights(j) * (-kImag) / (kImag * delta + poles(j));
        return acc;
    }
};

// Closed form of
//   int dDelta/2pi sigma*sqrt(2pi) e^{-sigma^2 (Delta-m)^2/2} e^{i Delta tau} (-i)/(i Delta + lambda)
// via w(q), q = (sigma/sqrt2)(i lambda - m - i tau/sigma^2). For Im q < 0 the
// reflection w(q) = 2 e^{-q^2} - w(-q) is applied with the exponent combined
// analytically, which keeps the expression finite for tau >> sigma.
inline Complex pole_overlap(double sigma, double m, double tau, Complex lambda) {
    const double s2 = sigma * sigma;
    const Complex q = (sigma / std::sqrt(2.0)) * (kImag * lambda - Complex(m, 0.0) - kImag * (tau / s2));
    const Complex prefactor = -kImag * sigma * std::sqrt(M_PI / 2.0);
    const Complex windowArg = kImag * m * tau - Complex(tau * tau / (2.0 * s2), 0.0);
    if (q.imag() >= 0.0) return prefactor * std::exp(windowArg) * faddeeva(q);
    const Complex lim = lambda + kImag * m;
    const Complex residueArg = 0.5 * s2 * lim * lim - lambda * tau;
    return prefactor * (2.0 * std::exp(residueArg) - std::exp(windowArg) * faddeeva(-q));
}

// int dDelta/2pi E_p(omega + Delta) e^{i Delta T} f(Delta) for a Gaussian probe.
// omega is an offset from the pump; the probe spectrum peaks at Delta = m.
inline Complex overlap_integral(const OverlapKernel& kernel, const PulseSet& pulse, double omega,
                                double t, OverlapPath path = OverlapPath::Analytic) {
    kernel.validate();
    const double m = pulse.probeCenterOffset - omega;
    if (path == OverlapPath::Analytic) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index j = 0; j < kernel.poles.size(); ++j)
            acc += kernel.weights(j) * pole_overlap(pulse.probeSigma, m, t, kernel.poles(j));
        return acc;
    }
    const double halfWidth = 12.0 / pulse.probeSigma;
    auto integrand = [&](double delta) -> Complex {
        return probe_envelope_freq(pulse, omega + delta) * std::exp(kImag * delta * t) *
               kernel.evaluate(delta) / (2.0 * M_PI);
    };
    return integrate_adaptive_rel(integrand, m - halfWidth, m + halfWidth, 1e-9);
}

// Shared pole set and per-bath-state weights for the damped population
// resolvent of one gamma value: rho_s(-Delta) = sum_j R_{sj} (-i)/(i Delta + lambda_j),
// lambda_j = eig_j(K) + 2 gamma.
struct PopulationKernels {
    ComplexVector poles;  // per eigenmode
    ComplexMatrix weights; // N x N, row s = weights of state s

    OverlapKernel state_kernel(int s) const {
        OverlapKernel k;
        k.poles = poles;
        k.weights = weights.row(s).transpose();
        return k;
    }
};

inline PopulationKernels population_kernels(const RateMatrix& bath, double gamma,
                                            const RealVector& p0) {
    const EigenDecomposition dec = eig_real_nonsymmetric(bath.K);
    PopulationKernels pk;
    pk.poles = dec.eigenvalues.array() + Complex(2.0 * gamma, 0.0);
    for (Eigen::Index j = 0; j < pk.poles.size(); ++j)
        if (!(pk.poles(j).real() > 0.0))
            throw DomainError("population_kernels: undamped pole; gamma too small");
    const ComplexVector coeffs = dec.leftInverse * p0.cast<Complex>();
    pk.weights = dec.rightVectors * coeffs.asDiagonal();
    return pk;
}

} // namespace sleraman
