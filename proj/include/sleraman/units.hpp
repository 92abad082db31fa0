// units.hpp — unit conversions and physical constants (internal units: rad/s, s, hbar = 1)

#pragma once

#include <cmath>

namespace sleraman::units {

inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s

// 1 cm^-1 expressed as an angular frequency: 2*pi*c*100 rad/s.
inline const double kCmToRad = 2.0 * M_PI * kSpeedOfLight * 100.0;

inline double cm_to_rad(double wavenumber_cm) { return wavenumber_cm * kCmToRad; }
inline double rad_to_cm(double omega_rad) { return omega_rad / kCmToRad; }

inline double fs_to_s(double t_fs) { return t_fs * 1e-15; }
inline double ps_to_s(double t_ps) { return t_ps * 1e-12; }
inline double s_to_fs(double t_s) { return t_s * 1e15; }

} // namespace sleraman::units
