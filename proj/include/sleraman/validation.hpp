// validation.hpp — self-check battery behind the `validate` CLI command:
// dual-path overlap identity, time-vs-frequency FSRS identity, the N=1
// SLE <-> sum-over-states reduction, and population conservation.

#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "sleraman/scenario.hpp"
#include "sleraman/signals.hpp"
#include "sleraman/sos.hpp"

namespace sleraman {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline double peak_normalized_linf(const std::vector<double>& a, const std::vector<double>& b) {
    double peakA = 0.0, peakB = 0.0, diff = 0.0;
    for (double v : a) peakA = std::max(peakA, std::abs(v));
    for (double v : b) peakB = std::max(peakB, std::abs(v));
    if (peakA == 0.0 || peakB == 0.0) return peakA == peakB ? 0.0 : 1.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        diff = std::max(diff, std::abs(a[i] / peakA - b[i] / peakB));
    return diff;
}

inline std::vector<double> linspace_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 0.5 * step; x += step) g.push_back(x);
    return g;
}

// N=1 bath model plus its equivalent two-level eigenstate system.
struct ReductionPair {
    SLEModel model;
    EigenstateSystem sys;
};

inline ReductionPair make_reduction_pair() {
    VibrationalMode mode;
    mode.omega1 = units::cm_to_rad(800.0);
    mode.delta = 0.0;
    mode.gamma = 1.88e12;
    mode.alpha = 1.0;
    mode.mu = 1.0;
    PulseSet pulses;
    pulses.probeSigma = units::fs_to_s(20.0);
    ReductionPair pair{make_model(single_state_bath(), {mode}, pulses), {}};

    EigenstateSystem& sys = pair.sys;
    sys.labels = {"a", "d"};
    sys.energies = RealVector(2);
    sys.energies << 0.0, mode.omega1;
    sys.dipole = RealMatrix::Zero(2, 2);
    sys.dipole(0, 1) = sys.dipole(1, 0) = mode.mu;
    sys.polarizability = RealMatrix::Zero(2, 2);
    sys.polarizability(0, 1) = sys.polarizability(1, 0) = mode.alpha;
    sys.dephasing = RealMatrix::Zero(2, 2);
    sys.dephasing(0, 1) = sys.dephasing(1, 0) = mode.gamma;
    sys.dephasing(0, 0) = sys.dephasing(1, 1) = 2.0 * mode.gamma;
    sys.prepared = ComplexMatrix::Zero(2, 2);
    sys.prepared(0, 0) = mode.mu * mode.mu;
    return pair;
}

template <typename Fn>
inline CheckResult timed_check(const std::string& name, const Fn& fn) {
    CheckResult res;
    res.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        fn(res);
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace detail

inline std::vector<CheckResult> run_validation(bool quick, std::size_t threads = 0) {
    std::vector<CheckResult> results;

    results.push_back(detail::timed_check("dual-path overlap identity", [&](CheckResult& res) {
        const SLEModel model = scenario_to_model(load_scenario("regime-I"));
        const auto grid = detail::linspace_grid(600.0, 1800.0, quick ? 25.0 : 5.0);
        const std::vector<double> delays = quick
            ? std::vector<double>{2e-15, 2e-13, 1e-12}
            : std::vector<double>{2e-15, 5e-14, 2e-13, 1e-12, 2e-12};
        double worst = 0.0;
        for (double t : delays) {
            const Spectrum a = fsrs_spectrum(model, grid, t, EvalPath::Analytic, threads);
            const Spectrum q = fsrs_spectrum(model, grid, t, EvalPath::Quadrature, threads);
            double peak = 0.0;
            for (double v : a.values) peak = std::max(peak, std::abs(v));
            for (std::size_t i = 0; i < grid.size(); ++i)
                worst = std::max(worst, std::abs(a.values[i] - q.values[i]) / peak);
        }
        res.pass = worst <= 1e-6;
        res.detail = "max peak-relative deviation " + std::to_string(worst);
    }));

    results.push_back(detail::timed_check("time vs frequency FSRS identity", [&](CheckResult& res) {
        const SLEModel model = scenario_to_model(load_scenario("regime-I"));
        const auto grid = detail::linspace_grid(600.0, 1800.0, quick ? 25.0 : 5.0);
        const std::vector<double> delays = quick ? std::vector<double>{2e-15, 5e-13}
                                                 : std::vector<double>{2e-15, 5e-13, 5e-12};
        const auto freq = fsrs_spectra(model, grid, delays, EvalPath::Analytic, threads);
        const auto td = fsrs_time_domain_spectra(model, grid, delays, threads);
        double worst = 0.0;
        for (std::size_t d = 0; d < delays.size(); ++d)
            worst = std::max(worst, detail::peak_normalized_linf(freq[d].values, td[d].values));
        res.pass = worst <= 1e-4;
        res.detail = "max normalized Linf " + std::to_string(worst);
    }));

    results.push_back(detail::timed_check("N=1 SLE-SOS reduction", [&](CheckResult& res) {
        const auto pair = detail::make_reduction_pair();
        const auto grid = detail::linspace_grid(700.0, 900.0, quick ? 2.0 : 0.5);
        double worstF = 0.0, worstT = 0.0;
        const double t = 2e-13;
        const Spectrum sleF = fsrs_spectrum(pair.model, grid, t, EvalPath::Analytic, threads);
        const Spectrum sleT = tasp_spectrum(pair.model, grid, t, threads);
        double peakF = 0.0, peakT = 0.0;
        for (double v : sleF.values) peakF = std::max(peakF, std::abs(v));
        for (double v : sleT.values) peakT = std::max(peakT, std::abs(v));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = units::cm_to_rad(grid[i]);
            const double sosF =
                fsrs_sos(pair.sys, pair.model.pulses, x, t, DiagramSet::StokesOnly);
            const double sosT =
                tasp_sos(pair.sys, x, t, DiagramSet::StokesOnly, &pair.model.pulses);
            worstF = std::max(worstF, std::abs(sosF - sleF.values[i]) / peakF);
            worstT = std::max(worstT, std::abs(sosT - sleT.values[i]) / peakT);
        }
        res.pass = worstF <= 1e-8 && worstT <= 1e-8;
        res.detail = "fsrs dev " + std::to_string(worstF) + ", tasp dev " + std::to_string(worstT);
    }));

    results.push_back(detail::timed_check("population conservation", [&](CheckResult& res) {
        const SLEModel model = scenario_to_model(load_scenario("regime-I"));
        RealVector times(quick ? 11 : 41);
        for (Eigen::Index i = 0; i < times.size(); ++i)
            times(i) = 20e-12 * static_cast<double>(i) / (times.size() - 1);
        const auto traj = propagate(model.bath, model.p0, times);
        double worstSum = 0.0;
        for (Eigen::Index i = 0; i < times.size(); ++i)
            worstSum = std::max(worstSum, std::abs(traj.populations.col(i).sum() - 1.0));
        const RateMatrix two = build_chain(2, 1.0e12, 1.0e12, 0.1);
        RealVector p0(2);
        p0 << 1.0, 0.0;
        RealVector tSteady(1);
        tSteady << 5e-11;
        const auto steady = propagate(two, p0, tSteady);
        const double steadyDev = std::max(std::abs(steady.populations(0, 0) - 1.0 / 11.0),
                                          std::abs(steady.populations(1, 0) - 10.0 / 11.0));
        res.pass = worstSum <= 1e-12 && steadyDev <= 1e-12;
        res.detail = "max |sum-1| " + std::to_string(worstSum) + ", N=2 steady dev " +
                     std::to_string(steadyDev);
    }));

    return results;
}

} // namespace sleraman
