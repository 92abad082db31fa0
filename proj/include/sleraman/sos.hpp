// sos.hpp — bath-free sum-over-states signals for a multilevel system prepared
// in a vibrational superposition: TASP and FSRS eigenstate expansions, plus the
// second/third-order generalized susceptibilities evaluated as Liouville-space
// resolvent chains.
//
// Level energies are given in the pump-rotated frame (pump at zero), so spectra
// live on the same positive shift axis as the SLE signals. Each signal carries
// its two ladder diagrams; both are summed by default, and the Stokes-resonant
// diagram alone is selectable for reduction checks against the SLE forms.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sleraman/numerics.hpp"
#include "sleraman/overlap.hpp"
#include "sleraman/pulses.hpp"
#include "sleraman/quadrature.hpp"

namespace sleraman {

struct EigenstateSystem {
    std::vector<std::string> labels;
    RealVector energies;        // rad/s, pump-rotated frame
    RealMatrix dipole;          // mu_ij
    RealMatrix polarizability;  // alpha_ij
    RealMatrix dephasing;       // gamma_ij
    ComplexMatrix prepared;     // rho_ac from the actinic pulse

    int size() const { return static_cast<int>(energies.size()); }

    void validate() const {
        const int n = size();
        if (dipole.rows() != n || dipole.cols() != n || polarizability.rows() != n ||
            polarizability.cols() != n || dephasing.rows() != n || dephasing.cols() != n ||
            prepared.rows() != n || prepared.cols() != n)
            throw ValidationError("EigenstateSystem: matrix dimensions inconsistent");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::abs(dipole(i, j) - dipole(j, i)) > 1e-12 * (1.0 + std::abs(dipole(i, j))))
                    throw ValidationError("EigenstateSystem: dipole matrix must be symmetric");
                if (std::abs(polarizability(i, j) - polarizability(j, i)) >
                    1e-12 * (1.0 + std::abs(polarizability(i, j))))
                    throw ValidationError("EigenstateSystem: polarizability must be symmetric");
                if (i != j && !(dephasing(i, j) > 0.0))
                    throw ValidationError("EigenstateSystem: off-diagonal dephasing must be positive");
                if (std::abs(prepared(i, j) - std::conj(prepared(j, i))) >
                    1e-12 * (1.0 + std::abs(prepared(i, j))))
                    throw ValidationError("EigenstateSystem: prepared state must be Hermitian");
            }
        if (prepared.cwiseAbs().maxCoeff() <= 0.0)
            throw ValidationError("EigenstateSystem: prepared state is empty");
    }
};

enum class DiagramSet { Both, StokesOnly };

// One ladder-diagram term. TASP uses two plain resolvents in the detection
// variable; FSRS replaces the second by a probe-window overlap kernel.
struct SosTerm {
    Complex weight;       // (+-i) * transition products * rho element
    double pole1 = 0.0;   // detection-axis pole position
    double gamma1 = 0.0;
    double pole2 = 0.0;   // TASP second pole
    double gamma2 = 0.0;
    Complex kernelLambda; // FSRS overlap kernel: gamma_ac + i omega_ac
};

namespace detail {

template <typename Weight>
std::vector<SosTerm> sos_terms(const EigenstateSystem& sys, DiagramSet set, const Weight& w) {
    sys.validate();
    const int n = sys.size();
    std::vector<SosTerm> terms;
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            const Complex rho = sys.prepared(a, c);
            if (rho == Complex{0.0, 0.0}) continue;
            for (int d = 0; d < n; ++d) {
                const double omega_da = sys.energies(d) - sys.energies(a);
                const double omega_ca = sys.energies(c) - sys.energies(a);
                const double omega_ac = -omega_ca;
                {
                    SosTerm t;
                    t.weight = -kImag * w(a, d) * w(d, c) * rho;
                    t.pole1 = omega_da;
                    t.gamma1 = sys.dephasing(d, a);
                    t.pole2 = omega_ca;
                    t.gamma2 = sys.dephasing(c, a);
                    t.kernelLambda = Complex(sys.dephasing(a, c), omega_ac);
                    if (t.weight != Complex{0.0, 0.0}) terms.push_back(t);
                }
                if (set == DiagramSet::Both) {
                    SosTerm t;
                    t.weight = kImag * w(d, a) * w(c, d) * rho;
                    t.pole1 = -omega_da;
                    t.gamma1 = sys.dephasing(a, d);
                    t.pole2 = omega_ac;
                    t.gamma2 = sys.dephasing(a, c);
                    t.kernelLambda = Complex(sys.dephasing(c, a), omega_ca);
                    if (t.weight != Complex{0.0, 0.0}) terms.push_back(t);
                }
            }
        }
    return terms;
}

} // namespace detail

inline std::vector<SosTerm> tasp_sos_terms(const EigenstateSystem& sys,
                                           DiagramSet set = DiagramSet::Both) {
    return detail::sos_terms(sys, set, [&](int i, int j) { return sys.dipole(i, j); });
}

inline std::vector<SosTerm> fsrs_sos_terms(const EigenstateSystem& sys,
                                           DiagramSet set = DiagramSet::Both) {
    return detail::sos_terms(sys, set, [&](int i, int j) { return sys.polarizability(i, j); });
}

// TASP eigenstate expansion: double-resonance sum with the e^{i omega T} delay
// phase. The probe spectrum is flat unless a pulse is supplied.
inline double tasp_sos(const EigenstateSystem& sys, double omega, double t,
                       DiagramSet set = DiagramSet::Both, const PulseSet* pulse = nullptr) {
    const auto terms = tasp_sos_terms(sys, set);
    const double env = pulse ? probe_envelope_shift(*pulse, omega) : 1.0;
    Complex acc{0.0, 0.0};
    for (const auto& term : terms) {
        const Complex den1(omega - term.pole1, term.gamma1);
        const Complex den2(omega - term.pole2, term.gamma2);
        acc += term.weight / (den1 * den2);
    }
    return 2.0 * (std::exp(kImag * omega * t) * env * acc).imag();
}

// FSRS eigenstate expansion: the a-d coherence sets the line, the a-c coherence
// enters only through the probe-window overlap (single-pole kernel).
inline double fsrs_sos(const EigenstateSystem& sys, const PulseSet& pulse, double omega, double t,
                       DiagramSet set = DiagramSet::Both) {
    const auto terms = fsrs_sos_terms(sys, set);
    const double env = probe_envelope_shift(pulse, omega);
    const double m = -pulse.probeCenterOffset - omega;
    Complex acc{0.0, 0.0};
    for (const auto& term : terms) {
        if (!(term.kernelLambda.real() > 0.0))
            throw DomainError("fsrs_sos: overlap kernel needs positive dephasing");
        const Complex den1(omega - term.pole1, term.gamma1);
        acc += term.weight / den1 * pole_overlap(pulse.probeSigma, m, t, term.kernelLambda);
    }
    return 2.0 * (env * acc).imag();
}

namespace detail {

// Liouville-space superoperators on the eigenstate-pair basis (column-major
// vec convention: |ij>> at index i + n j).
inline ComplexMatrix super_left(const RealMatrix& op) {
    const int n = static_cast<int>(op.rows());
    ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j)
        out.block(n * j, n * j, n, n) = op.cast<Complex>();
    return out;
}

inline ComplexMatrix super_right(const RealMatrix& op) {
    const int n = static_cast<int>(op.rows());
    ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            out.block(n * j, n * l, n, n).diagonal().setConstant(op(l, j));
    return out;
}

// Diagonal resolvent G(omega)|ij>> = |ij>> / (omega - omega_ij + i gamma_ij).
inline ComplexVector resolvent_diagonal(const EigenstateSystem& sys, double omega) {
    const int n = sys.size();
    ComplexVector diag(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const Complex den(omega - (sys.energies(i) - sys.energies(j)), sys.dephasing(i, j));
            if (den == Complex{0.0, 0.0})
                throw SingularResolvent("sos resolvent: undamped pole on the evaluation axis");
            diag(i + n * j) = 1.0 / den;
        }
    return diag;
}

inline ComplexVector trace_row(int n) {
    ComplexVector row = ComplexVector::Zero(n * n);
    for (int i = 0; i < n; ++i) row(i + n * i) = 1.0;
    return row;
}

inline Complex contract_prepared(const EigenstateSystem& sys, const ComplexVector& row) {
    const int n = sys.size();
    Complex acc{0.0, 0.0};
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            const Complex rho = sys.prepared(a, c);
            if (rho != Complex{0.0, 0.0}) acc += rho * row(a + n * c);
        }
    return acc;
}

} // namespace detail

// <V~_L G(w) V~_- G(w - w2') V~_- G(w - w2' - w1')>' with V~ = V + V^dagger.
inline Complex chi2_twm(const EigenstateSystem& sys, double omega, double omega1p,
                        double omega2p) {
    sys.validate();
    const int n = sys.size();
    const ComplexMatrix vl = detail::super_left(sys.dipole);
    const ComplexMatrix vminus = vl - detail::super_right(sys.dipole);
    // Row-vector chain carried as the transposed column y (y^T = <<I| V_L G ...).
    ComplexVector row = vl.transpose() * detail::trace_row(n);
    row = row.cwiseProduct(detail::resolvent_diagonal(sys, omega));
    row = vminus.transpose() * row;
    row = row.cwiseProduct(detail::resolvent_diagonal(sys, omega - omega2p));
    row = vminus.transpose() * row;
    row = row.cwiseProduct(detail::resolvent_diagonal(sys, omega - omega2p - omega1p));
    return detail::contract_prepared(sys, row);
}

// <V~_L G(w) V~_- G(w-w3') V~_- G(w-w3'-w2') V~_- G(w-w3'-w2'-w1')>'.
inline Complex chi3_fwm(const EigenstateSystem& sys, double omega, double omega1p, double omega2p,
                        double omega3p) {
    sys.validate();
    const int n = sys.size();
    const ComplexMatrix vl = detail::super_left(sys.dipole);
    const ComplexMatrix vminus = vl - detail::super_right(sys.dipole);
    const double freqs[4] = {omega, omega - omega3p, omega - omega3p - omega2p,
                             omega - omega3p - omega2p - omega1p};
    ComplexVector row = vl.transpose() * detail::trace_row(n);
    row = row.cwiseProduct(detail::resolvent_diagonal(sys, freqs[0]));
    for (int link = 1; link < 4; ++link) {
        row = vminus.transpose() * row;
        row = row.cwiseProduct(detail::resolvent_diagonal(sys, freqs[link]));
    }
    return detail::contract_prepared(sys, row);
}

namespace detail {

// Alternate evaluation expanding every commutator into pure left/right actions;
// used to cross-check the materialized V~_- route.
inline Complex chi_chain_expanded(const EigenstateSystem& sys, const std::vector<double>& freqs) {
    const int n = sys.size();
    const ComplexMatrix vl = super_left(sys.dipole);
    const ComplexMatrix vr = super_right(sys.dipole);
    const int links = static_cast<int>(freqs.size()) - 1;
    Complex total{0.0, 0.0};
    for (int mask = 0; mask < (1 << links); ++mask) {
        ComplexVector row = vl.transpose() * trace_row(n);
        row = row.cwiseProduct(resolvent_diagonal(sys, freqs[0]));
        double sign = 1.0;
        for (int link = 0; link < links; ++link) {
            const bool useRight = (mask >> link) & 1;
            if (useRight) sign = -sign;
            row = (useRight ? vr : vl).transpose() * row;
            row = row.cwiseProduct(resolvent_diagonal(sys, freqs[link + 1]));
        }
        total += sign * contract_prepared(sys, row);
    }
    return total;
}

} // namespace detail

inline Complex chi2_twm_expanded(const EigenstateSystem& sys, double omega, double omega1p,
                                 double omega2p) {
    return detail::chi_chain_expanded(sys, {omega, omega - omega2p, omega - omega2p - omega1p});
}

inline Complex chi3_fwm_expanded(const EigenstateSystem& sys, double omega, double omega1p,
                                 double omega2p, double omega3p) {
    return detail::chi_chain_expanded(
        sys, {omega, omega - omega3p, omega - omega3p - omega2p,
              omega - omega3p - omega2p - omega1p});
}

using PulseSpectrum = std::function<Complex(double)>;

// Full TWM signal assembly: nested quadrature over the two pulse spectra.
inline double s_twm(const EigenstateSystem& sys, double omega, double t, double t1, double t2,
                    const PulseSpectrum& e1, const PulseSpectrum& e2, Complex epConj,
                    double halfWidth, double tol = 1e-8) {
    auto inner = [&](double w1) -> Complex {
        auto f = [&](double w2) -> Complex {
            return std::exp(kImag * (w1 * t1 + w2 * t2)) * e1(w1) * e2(w2) *
                   chi2_twm(sys, omega, w1, w2) / (4.0 * M_PI * M_PI);
        };
        return integrate_adaptive_rel(f, -halfWidth, halfWidth, tol);
    };
    const Complex outer = integrate_adaptive_rel(inner, -halfWidth, halfWidth, tol);
    return 2.0 * (std::exp(-kImag * omega * t) * epConj * outer).imag();
}

// Full FWM signal assembly; one more spectral integral.
inline double s_fwm(const EigenstateSystem& sys, double omega, double t, double t1, double t2,
                    double t3, const PulseSpectrum& e1, const PulseSpectrum& e2,
                    const PulseSpectrum& e3, Complex epConj, double halfWidth,
                    double tol = 1e-6) {
    auto level2 = [&](double w1) -> Complex {
        auto level1 = [&](double w2) -> Complex {
            auto level0 = [&](double w3) -> Complex {
                return std::exp(kImag * (w1 * t1 + w2 * t2 + w3 * t3)) * e1(w1) * e2(w2) *
                       e3(w3) * chi3_fwm(sys, omega, w1, w2, w3) /
                       (8.0 * M_PI * M_PI * M_PI);
            };
            return integrate_adaptive_rel(level0, -halfWidth, halfWidth, tol, 0.0, 256);
        };
        return integrate_adaptive_rel(level1, -halfWidth, halfWidth, tol, 0.0, 256);
    };
    const Complex outer = integrate_adaptive_rel(level2, -halfWidth, halfWidth, tol, 0.0, 256);
    return 2.0 * (std::exp(-kImag * omega * t) * epConj * outer).imag();
}

} // namespace sleraman
