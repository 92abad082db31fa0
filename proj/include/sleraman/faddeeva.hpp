// faddeeva.hpp — w(z) = exp(-z^2) erfc(-iz), the plasma dispersion kernel.
//
// Three-regime evaluation: Maclaurin power series near the origin, a pole-shifted
// Gautschi downward recurrence in the intermediate band, and the Laplace
// continued fraction far out. Lower half-plane via w(z) = 2 exp(-z^2) - w(-z).

#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace sleraman {

inline std::complex<double> faddeeva(std::complex<double> z) {
    const double two_over_sqrt_pi = 1.12837916709551257388;
    const double xi = z.real();
    const double yi = z.imag();
    const double xabs = std::fabs(xi);
    const double yabs = std::fabs(yi);
    const double xr = xabs / 6.3;
    const double yr = yabs / 4.4;
    double qrho = xr * xr + yr * yr;

    const double xabsq = xabs * xabs;
    const double xquad = xabsq - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;

    double u = 0.0, v = 0.0;
    double u2 = 0.0, v2 = 0.0;
    const bool series_region = qrho < 0.085264;

    if (series_region) {
        // Power series; term count tuned to the distance from the origin.
        qrho = (1.0 - 0.85 * yr) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -two_over_sqrt_pi * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = two_over_sqrt_pi * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        double h = 0.0, h2 = 0.0, qlambda = 0.0;
        int kapn = 0, nu = 0;
        if (qrho > 1.0) {
            // Laplace continued fraction, depth shrinking with |z|.
            const double q = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * q + 77.0));
        } else {
            // Pole-shifted recurrence (Gautschi) between the two regimes.
            const double q = (1.0 - yr) * std::sqrt(1.0 - qrho);
            h = 1.88 * q;
            h2 = 2.0 * h;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * q));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * q));
        }
        const bool shifted = h > 0.0;
        if (shifted) qlambda = std::pow(h2, kapn);

        double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1.0;
            const double tx = yabs + h + np1 * rx;
            const double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (shifted && n <= kapn) {
                const double t = qlambda + sx;
                sx = rx * t - ry * sy;
                sy = ry * t + rx * sy;
                qlambda /= h2;
            }
        }
        if (!shifted) {
            u = two_over_sqrt_pi * rx;
            v = two_over_sqrt_pi * ry;
        } else {
            u = two_over_sqrt_pi * sx;
            v = two_over_sqrt_pi * sy;
        }
        if (yabs == 0.0) u = std::exp(-xabsq);
    }

    // Map back from the first quadrant.
    if (yi < 0.0) {
        if (series_region) {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            // 2 exp(-z^2); may overflow deep in the lower half-plane.
            const double xq = -xquad;
            if (xq > 708.0) {
                const double inf = std::numeric_limits<double>::infinity();
                return {inf, inf};
            }
            const double w1 = 2.0 * std::exp(xq);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0) v = -v;
    } else {
        if (xi < 0.0) v = -v;
    }
    return {u, v};
}

} // namespace sleraman
