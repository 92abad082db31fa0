// signals.hpp — SLE observables on the Raman shift axis (shift = omega_1 - omega,
// resonances at +omega_ca): frequency-domain FSRS, its time-domain evaluator,
// the static-average limit, and TASP.
//
// Frequency-domain FSRS assembly per shift point:
//   S(shift, T) = Im[ (-2i) envS(shift) sum_modes alpha^2 mu^2
//                     sum_s (1^T G_coh(shift))_s * W_s(shift, T) ],
//   W_s(shift, T) = int dDelta/2pi envS(shift + Delta) e^{i Delta T} rho_s(-Delta).
// The analytic path expands rho(-Delta) over the bath eigenmodes and evaluates
// each pole with the Faddeeva closed form; the quadrature path evaluates the
// resolvent by LU at every node. The time-domain path integrates the matter
// correlation function directly and shares no resolvent or Faddeeva machinery.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sleraman/overlap.hpp"
#include "sleraman/parallel.hpp"
#include "sleraman/sle_core.hpp"

namespace sleraman {

enum class EvalPath { Analytic, Quadrature, TimeDomain };

inline const char* to_string(EvalPath p) {
    switch (p) {
        case EvalPath::Analytic: return "analytic";
        case EvalPath::Quadrature: return "quadrature";
        case EvalPath::TimeDomain: return "time-domain";
    }
    return "?";
}

struct Spectrum {
    std::vector<double> shiftGrid; // cm^-1, strictly ascending
    double delay = 0.0;            // s
    std::vector<double> values;    // arbitrary units, prefactors = 1
    std::string label;
    EvalPath path = EvalPath::Analytic;

    void validate() const {
        if (shiftGrid.size() != values.size())
            throw DimensionMismatch("Spectrum: grid/value size mismatch");
        for (std::size_t i = 0; i + 1 < shiftGrid.size(); ++i)
            if (!(shiftGrid[i] < shiftGrid[i + 1]))
                throw ValidationError("Spectrum: grid must be strictly ascending");
        for (double v : values)
            if (!std::isfinite(v)) throw NumericsError("Spectrum: non-finite value");
    }
};

namespace detail {

// Distinct dephasing values; the overlap kernel depends on the mode only
// through gamma, so modes sharing gamma share one kernel evaluation.
struct GammaGroups {
    std::vector<double> gammas;   // distinct values
    std::vector<int> groupOfMode; // mode index -> group index
};

inline GammaGroups group_gammas(const SLEModel& model) {
    GammaGroups g;
    for (const auto& mode : model.modes) {
        int idx = -1;
        for (std::size_t k = 0; k < g.gammas.size(); ++k)
            if (g.gammas[k] == mode.gamma) { idx = static_cast<int>(k); break; }
        if (idx < 0) {
            g.gammas.push_back(mode.gamma);
            idx = static_cast<int>(g.gammas.size()) - 1;
        }
        g.groupOfMode.push_back(idx);
    }
    return g;
}

// 1^T G_coh(shift) per mode, precomputed once per grid (delay independent).
inline std::vector<std::vector<ComplexVector>> coherence_rows(const SLEModel& model,
                                                              const std::vector<double>& gridRad,
                                                              std::size_t threads) {
    std::vector<CoherenceBlock> blocks;
    blocks.reserve(model.modes.size());
    for (const auto& mode : model.modes) blocks.push_back(coherence_block(model.bath, mode));
    std::vector<std::vector<ComplexVector>> rows(model.modes.size());
    for (auto& r : rows) r.resize(gridRad.size());
    parallel_for(gridRad.size(), [&](std::size_t i) {
        for (std::size_t m = 0; m < blocks.size(); ++m)
            rows[m][i] = coherence_green_colsums(blocks[m], gridRad[i]);
    }, threads);
    return rows;
}

inline std::vector<double> grid_to_rad(const std::vector<double>& gridCm) {
    std::vector<double> rad(gridCm.size());
    for (std::size_t i = 0; i < gridCm.size(); ++i) rad[i] = units::cm_to_rad(gridCm[i]);
    return rad;
}

[[noreturn]] inline void rethrow_with_point(const NumericsError& e, double shiftCm, double t) {
    throw NumericsError(std::string(e.what()) + " [at shift=" + std::to_string(shiftCm) +
                        " cm^-1, T=" + std::to_string(units::s_to_fs(t)) + " fs]");
}

inline ComplexVector analytic_overlap_vector(const PopulationKernels& pk, double sigma, double m,
                                             double t) {
    ComplexVector poleVals(pk.poles.size());
    for (Eigen::Index j = 0; j < pk.poles.size(); ++j)
        poleVals(j) = pole_overlap(sigma, m, t, pk.poles(j));
    return pk.weights * poleVals;
}

inline ComplexVector quadrature_overlap_vector(const SLEModel& model, double gamma, double shift,
                                               double t, double tolRel) {
    const PulseSet& p = model.pulses;
    const double m = -p.probeCenterOffset - shift;
    const double halfWidth = 12.0 / p.probeSigma;
    auto integrand = [&](double delta) -> ComplexVector {
        const double env = probe_envelope_shift(p, shift + delta);
        const Complex phase = std::exp(kImag * delta * t);
        return (env / (2.0 * M_PI)) * phase *
               population_resolvent(model.bath, gamma, model.p0, delta);
    };
    return integrate_adaptive_vec(integrand, m - halfWidth, m + halfWidth, tolRel);
}

} // namespace detail

// Frequency-domain FSRS for several delays sharing one grid. The analytic path
// needs the eigendecomposition of K; if that fails the evaluation falls back to
// quadrature and the recorded path says so.
inline std::vector<Spectrum> fsrs_spectra(const SLEModel& model, const std::vector<double>& gridCm,
                                          const std::vector<double>& delays,
                                          EvalPath path = EvalPath::Analytic,
                                          std::size_t threads = 0,
                                          const std::string& label = "",
                                          double quadratureTol = 1e-9) {
    model.validate();
    const std::vector<double> gridRad = detail::grid_to_rad(gridCm);
    const auto rows = detail::coherence_rows(model, gridRad, threads);
    const auto groups = detail::group_gammas(model);

    EvalPath actual = path;
    std::vector<PopulationKernels> kernels;
    if (path == EvalPath::Analytic) {
        try {
            for (double g : groups.gammas)
                kernels.push_back(population_kernels(model.bath, g, model.p0));
        } catch (const NoConvergence&) {
            kernels.clear();
            actual = EvalPath::Quadrature;
        }
    } else if (path != EvalPath::Quadrature) {
        throw DomainError("fsrs_spectra: only analytic/quadrature paths here");
    }

    const double sigma = model.pulses.probeSigma;
    const double shiftProbe = -model.pulses.probeCenterOffset;

    std::vector<Spectrum> out(delays.size());
    for (std::size_t d = 0; d < delays.size(); ++d) {
        out[d].shiftGrid = gridCm;
        out[d].delay = delays[d];
        out[d].values.assign(gridCm.size(), 0.0);
        out[d].label = label;
        out[d].path = actual;
    }

    const std::size_t nPoints = gridRad.size();
    parallel_for(delays.size() * nPoints, [&](std::size_t flat) {
        const std::size_t d = flat / nPoints;
        const std::size_t i = flat % nPoints;
        const double t = delays[d];
        if (t < 0.0) return; // nothing prepared before the actinic pulse
        const double shift = gridRad[i];
        try {
            std::vector<ComplexVector> w(groups.gammas.size());
            for (std::size_t g = 0; g < groups.gammas.size(); ++g) {
                if (actual == EvalPath::Analytic)
                    w[g] = detail::analytic_overlap_vector(kernels[g], sigma, shiftProbe - shift, t);
                else
                    w[g] = detail::quadrature_overlap_vector(model, groups.gammas[g], shift, t,
                                                             quadratureTol);
            }
            Complex acc{0.0, 0.0};
            for (std::size_t m = 0; m < model.modes.size(); ++m)
                acc += model.fsrsWeight(m) *
                       rows[m][i].cwiseProduct(w[groups.groupOfMode[m]]).sum();
            out[d].values[i] = -2.0 * probe_envelope_shift(model.pulses, shift) * acc.real();
        } catch (const NumericsError& e) {
            detail::rethrow_with_point(e, gridCm[i], t);
        }
    }, threads);

    for (auto& s : out) s.validate();
    return out;
}

inline Spectrum fsrs_spectrum(const SLEModel& model, const std::vector<double>& gridCm, double t,
                              EvalPath path = EvalPath::Analytic, std::size_t threads = 0) {
    return fsrs_spectra(model, gridCm, {t}, path, threads).front();
}

// Static-average limit: population-snapshot weights times per-state lines
// (-Im of the coherence resolvent column sums; purely absorptive shapes for a
// slow bath). Weights are the bare-K propagate() snapshot.
inline Spectrum static_limit_spectrum(const SLEModel& model, const std::vector<double>& gridCm,
                                      double t, std::size_t threads = 0) {
    model.validate();
    const std::vector<double> gridRad = detail::grid_to_rad(gridCm);
    Spectrum spec;
    spec.shiftGrid = gridCm;
    spec.delay = t;
    spec.values.assign(gridCm.size(), 0.0);
    spec.path = EvalPath::Analytic;
    if (t < 0.0) return spec;

    const auto rows = detail::coherence_rows(model, gridRad, threads);
    const RealVector weights = expm(RealMatrix(-model.bath.K * t)) * model.p0;
    parallel_for(gridRad.size(), [&](std::size_t i) {
        const double env = probe_envelope_shift(model.pulses, gridRad[i]);
        double acc = 0.0;
        for (std::size_t m = 0; m < model.modes.size(); ++m)
            acc += model.fsrsWeight(m) *
                   rows[m][i].cwiseProduct(weights.cast<Complex>()).sum().imag();
        spec.values[i] = -2.0 * env * env * acc;
    }, threads);
    spec.validate();
    return spec;
}

// TASP: coherence resolvent at the shift itself, population resolvent at the
// detuning, explicit e^{i shift T} delay phase, dipole weights.
inline Spectrum tasp_spectrum(const SLEModel& model, const std::vector<double>& gridCm, double t,
                              std::size_t threads = 0) {
    model.validate();
    const std::vector<double> gridRad = detail::grid_to_rad(gridCm);
    Spectrum spec;
    spec.shiftGrid = gridCm;
    spec.delay = t;
    spec.values.assign(gridCm.size(), 0.0);
    spec.path = EvalPath::Analytic;
    if (t < 0.0) return spec;

    const auto rows = detail::coherence_rows(model, gridRad, threads);
    const auto groups = detail::group_gammas(model);
    parallel_for(gridRad.size(), [&](std::size_t i) {
        const double shift = gridRad[i];
        try {
            std::vector<ComplexVector> pop(groups.gammas.size());
            for (std::size_t g = 0; g < groups.gammas.size(); ++g)
                pop[g] = population_resolvent(model.bath, groups.gammas[g], model.p0, -shift);
            const Complex phase = std::exp(kImag * shift * t);
            Complex acc{0.0, 0.0};
            for (std::size_t m = 0; m < model.modes.size(); ++m)
                acc += model.taspWeight(m) *
                       rows[m][i].cwiseProduct(pop[groups.groupOfMode[m]]).sum();
            spec.values[i] = -2.0 * probe_envelope_shift(model.pulses, shift) * (phase * acc).real();
        } catch (const NumericsError& e) {
            detail::rethrow_with_point(e, gridCm[i], t);
        }
    }, threads);
    spec.validate();
    return spec;
}

namespace detail {

struct CompositeRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline CompositeRule composite_gk15(double a, double b, int panels) {
    CompositeRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels) * 15);
    rule.weights.reserve(static_cast<std::size_t>(panels) * 15);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double centre = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (int j = 0; j < 8; ++j) {
            const double dx = half * gk15::xgk[j];
            if (j == 7) {
                rule.nodes.push_back(centre);
                rule.weights.push_back(half * gk15::wgk[7]);
            } else {
                rule.nodes.push_back(centre - dx);
                rule.weights.push_back(half * gk15::wgk[j]);
                rule.nodes.push_back(centre + dx);
                rule.weights.push_back(half * gk15::wgk[j]);
            }
        }
    }
    return rule;
}

inline int panels_for_rate(double tmax, double rate, int floor_, int cap) {
    const double cycles = tmax * rate / (2.0 * M_PI);
    const int p = static_cast<int>(std::ceil(1.5 * cycles)) + 16;
    return std::clamp(p, floor_, cap);
}

} // namespace detail

// Time-domain FSRS: the t1/t2 integrals of the matter correlation function on
// composite Kronrod grids (expm-sampled propagators), with the probe-window
// Delta integral carried out as the exact Gaussian transform. Shares no code
// path with the resolvent/Faddeeva route.
inline std::vector<Spectrum> fsrs_time_domain_spectra(const SLEModel& model,
                                                      const std::vector<double>& gridCm,
                                                      const std::vector<double>& delays,
                                                      std::size_t threads = 0) {
    model.validate();
    const std::vector<double> gridRad = detail::grid_to_rad(gridCm);
    const std::size_t nPoints = gridRad.size();
    const int nBath = model.bath.N;
    const double sigma = model.pulses.probeSigma;
    const double shiftProbe = -model.pulses.probeCenterOffset;

    double gammaMin = model.modes.front().gamma;
    double wMin = model.modes.front().omega1, wMax = wMin;
    for (const auto& mode : model.modes) {
        gammaMin = std::min(gammaMin, mode.gamma);
        const RealVector w = frequencies_along_chain(mode, nBath);
        wMin = std::min(wMin, w.minCoeff());
        wMax = std::max(wMax, w.maxCoeff());
    }
    double tMaxDelay = 0.0;
    for (double t : delays) tMaxDelay = std::max(tMaxDelay, t);

    const double kScale = model.bath.K.cwiseAbs().maxCoeff();
    const double t1Max = 18.0 / gammaMin;
    const double t2Max = std::max(9.0 / gammaMin, tMaxDelay + 8.0 * sigma);
    const double gridLo = gridRad.front(), gridHi = gridRad.back();

    const double rate1 = std::max(gridHi - wMin, wMax - gridLo) + 4.0 * kScale;
    const int panels1 = detail::panels_for_rate(t1Max, std::max(rate1, 0.0), 64, 4000);
    const double rate2 = std::max(std::abs(shiftProbe - gridLo), std::abs(shiftProbe - gridHi)) +
                         4.0 * kScale;
    const int windowPanels = static_cast<int>(std::ceil(t2Max / sigma));
    const int panels2 = std::clamp(
        std::max(detail::panels_for_rate(t2Max, rate2, 64, 6000), windowPanels), 64, 6000);

    const auto rule1 = detail::composite_gk15(0.0, t1Max, panels1);
    const auto rule2 = detail::composite_gk15(0.0, t2Max, panels2);
    const std::size_t n1 = rule1.nodes.size(), n2 = rule2.nodes.size();

    // Coherence-sector samples v_m(t) = e^{-gamma t} 1^T exp((-K - i Omega) t).
    std::vector<ComplexMatrix> v(model.modes.size());
    for (auto& vm : v) vm.resize(nBath, n1);
    parallel_for(n1, [&](std::size_t k) {
        const double t = rule1.nodes[k];
        for (std::size_t m = 0; m < model.modes.size(); ++m) {
            const VibrationalMode& mode = model.modes[m];
            const RealVector omega = frequencies_along_chain(mode, nBath);
            ComplexMatrix m0 = -model.bath.K.cast<Complex>();
            for (int s = 0; s < nBath; ++s) m0(s, s) -= kImag * omega(s);
            const ComplexMatrix prop = expm(ComplexMatrix(m0 * t));
            v[m].col(k) = std::exp(-mode.gamma * t) *
                          (prop.transpose() * ComplexVector::Ones(nBath));
        }
    }, threads);

    // Population-sector samples u_g(t) = e^{-2 gamma t} exp(-K t) p0 per gamma group.
    const auto groups = detail::group_gammas(model);
    std::vector<RealMatrix> u(groups.gammas.size());
    for (auto& ug : u) ug.resize(nBath, n2);
    parallel_for(n2, [&](std::size_t k) {
        const double t = rule2.nodes[k];
        const RealVector bare = expm(RealMatrix(-model.bath.K * t)) * model.p0;
        for (std::size_t g = 0; g < groups.gammas.size(); ++g)
            u[g].col(k) = std::exp(-2.0 * groups.gammas[g] * t) * bare;
    }, threads);

    std::vector<Spectrum> out(delays.size());
    for (std::size_t d = 0; d < delays.size(); ++d) {
        out[d].shiftGrid = gridCm;
        out[d].delay = delays[d];
        out[d].values.assign(nPoints, 0.0);
        out[d].path = EvalPath::TimeDomain;
    }

    parallel_for(nPoints, [&](std::size_t i) {
        const double shift = gridRad[i];
        const double m = shiftProbe - shift;

        std::vector<ComplexVector> a(model.modes.size(), ComplexVector::Zero(nBath));
        for (std::size_t k = 0; k < n1; ++k) {
            const Complex phase = std::polar(rule1.weights[k], shift * rule1.nodes[k]);
            for (std::size_t mm = 0; mm < model.modes.size(); ++mm)
                a[mm] += phase * v[mm].col(k);
        }
        for (auto& am : a) am *= -kImag;

        for (std::size_t d = 0; d < delays.size(); ++d) {
            const double t = delays[d];
            if (t < 0.0) continue;
            std::vector<ComplexVector> wTilde(groups.gammas.size(), ComplexVector::Zero(nBath));
            for (std::size_t k = 0; k < n2; ++k) {
                const double tau = t - rule2.nodes[k];
                const double window = std::exp(-tau * tau / (2.0 * sigma * sigma));
                if (window == 0.0) continue;
                const Complex phase = std::polar(rule2.weights[k] * window, m * tau);
                for (std::size_t g = 0; g < groups.gammas.size(); ++g)
                    wTilde[g] += phase * u[g].col(k);
            }
            Complex acc{0.0, 0.0};
            for (std::size_t mm = 0; mm < model.modes.size(); ++mm)
                acc += model.fsrsWeight(mm) *
                       a[mm].cwiseProduct(-kImag * wTilde[groups.groupOfMode[mm]]).sum();
            out[d].values[i] = -2.0 * probe_envelope_shift(model.pulses, shift) * acc.real();
        }
    }, threads);

    for (auto& s : out) s.validate();
    return out;
}

inline Spectrum fsrs_spectrum_time_domain(const SLEModel& model, const std::vector<double>& gridCm,
                                          double t, std::size_t threads = 0) {
    return fsrs_time_domain_spectra(model, gridCm, {t}, threads).front();
}

} // namespace sleraman
