// kinetics.hpp — Markovian bath: linear reaction chain, population propagation,
// and the frequency-domain population resolvent. Convention: d rho/dt = -K rho,
// so K has nonnegative diagonal and nonpositive off-diagonal entries, and every
// column sums to zero.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sleraman/errors.hpp"
#include "sleraman/numerics.hpp"

namespace sleraman {

struct RateMatrix {
    int N = 0;
    RealMatrix K;            // N x N, s^-1
    RealVector forwardRates; // k_1 .. k_{N-1}
    RealVector backwardRates; // k_{-1} .. k_{-(N-1)}
};

// Single-state bath (static limit); K = [0].
inline RateMatrix single_state_bath() {
    RateMatrix rm;
    rm.N = 1;
    rm.K = RealMatrix::Zero(1, 1);
    rm.forwardRates = RealVector(0);
    rm.backwardRates = RealVector(0);
    return rm;
}

inline RateMatrix rate_matrix_from_links(const RealVector& forward, const RealVector& backward) {
    const int links = static_cast<int>(forward.size());
    if (backward.size() != links) throw InvalidRate("rate matrix: link count mismatch");
    const int n = links + 1;
    RateMatrix rm;
    rm.N = n;
    rm.forwardRates = forward;
    rm.backwardRates = backward;
    rm.K = RealMatrix::Zero(n, n);
    for (int i = 0; i < links; ++i) {
        // link i couples states i and i+1; gains are negative entries of K
        rm.K(i + 1, i) -= forward(i);
        rm.K(i, i + 1) -= backward(i);
    }
    for (int s = 0; s < n; ++s) rm.K(s, s) = -rm.K.col(s).sum(); // exact column zero
    return rm;
}

// Linear chain with rate constants varying linearly from k1 at the first link
// to kLast at the final link; backward rates are backwardRatio * forward.
inline RateMatrix build_chain(int N, double k1, double kLast, double backwardRatio = 0.1) {
    if (N < 2) throw InvalidRate("build_chain: need at least two bath states");
    if (!(k1 > 0.0) || !(kLast > 0.0)) throw InvalidRate("build_chain: endpoint rates must be positive");
    if (backwardRatio < 0.0) throw InvalidRate("build_chain: backward ratio must be nonnegative");
    const int links = N - 1;
    RealVector forward(links), backward(links);
    for (int i = 0; i < links; ++i) {
        const double k = (N == 2) ? k1 : k1 + (kLast - k1) / (N - 2) * i;
        if (!(k > 0.0))
            throw InvalidRate("build_chain: nonpositive forward rate at link " + std::to_string(i + 1));
        forward(i) = k;
        backward(i) = backwardRatio * k;
    }
    return rate_matrix_from_links(forward, backward);
}

struct PopulationTrajectory {
    RealVector times;      // s
    RealMatrix populations; // N x timecount
};

namespace detail {

inline void check_probability_vector(const RealVector& p0, const char* who) {
    if (p0.minCoeff() < 0.0) throw DomainError(std::string(who) + ": negative initial population");
    if (std::abs(p0.sum() - 1.0) > 1e-9)
        throw DomainError(std::string(who) + ": initial populations must sum to 1");
}

} // namespace detail

// rho(t) = expm(-K t) p0 at each requested time.
inline PopulationTrajectory propagate(const RateMatrix& rm, const RealVector& p0,
                                      const RealVector& times) {
    if (p0.size() != rm.N) throw DimensionMismatch("propagate: p0 dimension mismatch");
    detail::check_probability_vector(p0, "propagate");
    for (Eigen::Index i = 0; i < times.size(); ++i) {
        if (times(i) < 0.0 || (i > 0 && times(i) < times(i - 1)))
            throw DomainError("propagate: times must be nonnegative and ascending");
    }
    PopulationTrajectory traj;
    traj.times = times;
    traj.populations = RealMatrix(rm.N, times.size());
    for (Eigen::Index i = 0; i < times.size(); ++i) {
        if (times(i) == 0.0)
            traj.populations.col(i) = p0;
        else
            traj.populations.col(i) = expm(RealMatrix(-rm.K * times(i))) * p0;
    }
    return traj;
}

// Eigendecomposition route for the same propagation; cross-check path.
inline PopulationTrajectory propagate_eig(const RateMatrix& rm, const RealVector& p0,
                                          const RealVector& times) {
    if (p0.size() != rm.N) throw DimensionMismatch("propagate_eig: p0 dimension mismatch");
    detail::check_probability_vector(p0, "propagate_eig");
    const EigenDecomposition dec = eig_real_nonsymmetric(rm.K);
    const ComplexVector coeffs = dec.leftInverse * p0.cast<Complex>();
    PopulationTrajectory traj;
    traj.times = times;
    traj.populations = RealMatrix(rm.N, times.size());
    for (Eigen::Index i = 0; i < times.size(); ++i) {
        ComplexVector scaled(rm.N);
        for (int j = 0; j < rm.N; ++j)
            scaled(j) = coeffs(j) * std::exp(-dec.eigenvalues(j) * times(i));
        traj.populations.col(i) = (dec.rightVectors * scaled).real();
    }
    return traj;
}

// -i (i Delta I + K + 2 gamma_a I)^{-1} p0: the Fourier transform of the damped
// population propagator evaluated at -Delta.
inline ComplexVector population_resolvent(const RateMatrix& rm, double gamma_a,
                                          const RealVector& p0, double delta) {
    if (p0.size() != rm.N) throw DimensionMismatch("population_resolvent: p0 dimension mismatch");
    ComplexMatrix m = rm.K.cast<Complex>();
    m += (kImag * delta + Complex(2.0 * gamma_a, 0.0)) * ComplexMatrix::Identity(rm.N, rm.N);
    try {
        return -kImag * lu_solve(m, p0.cast<Complex>());
    } catch (const SingularMatrix&) {
        throw SingularResolvent("population_resolvent: undamped eigenvalue on the real axis");
    }
}

} // namespace sleraman
