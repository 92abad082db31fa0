// pulses.hpp — field models: impulsive actinic pulse, monochromatic pump,
// Gaussian probe. Spectra are stored delay-free; every delay phase appears
// explicitly in the signal expressions. FT convention: E(w) = int dt e^{iwt} E(t).

#pragma once

#include <cmath>
#include <complex>

#include "sleraman/errors.hpp"
#include "sleraman/units.hpp"

namespace sleraman {

struct PulseSet {
    double actinicAmplitude = 1.0;
    double pumpFrequency = 0.0;      // omega_1, rad/s; shift-axis origin
    double probeCenterOffset = -units::cm_to_rad(1000.0); // omega_p - omega_1, rad/s
    double probeSigma = 20e-15;      // s

    void validate() const {
        if (!(probeSigma > 0.0)) throw ValidationError("PulseSet: probe duration must be positive");
        if (actinicAmplitude < 0.0) throw ValidationError("PulseSet: amplitudes must be nonnegative");
    }
};

// Delay-free probe spectrum at offset omega_rel = omega - omega_1:
// sigma*sqrt(2 pi) * exp(-sigma^2 (omega_rel - (omega_p - omega_1))^2 / 2).
inline std::complex<double> probe_envelope_freq(const PulseSet& p, double omegaRel) {
    const double d = omegaRel - p.probeCenterOffset;
    return {p.probeSigma * std::sqrt(2.0 * M_PI) * std::exp(-0.5 * p.probeSigma * p.probeSigma * d * d),
            0.0};
}

// Same envelope viewed on the Stokes shift axis (shift = omega_1 - omega); the
// probe centre lands at shift = -(omega_p - omega_1), e.g. +1000 cm^-1.
inline double probe_envelope_shift(const PulseSet& p, double shift) {
    return probe_envelope_freq(p, -shift).real();
}

// |envelope(t)| of the probe, centred at zero (delay factored out).
inline double probe_envelope_time(const PulseSet& p, double t) {
    return std::exp(-t * t / (2.0 * p.probeSigma * p.probeSigma));
}

} // namespace sleraman
