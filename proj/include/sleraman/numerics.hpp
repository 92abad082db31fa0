// numerics.hpp — dense complex linear algebra: LU solve, matrix exponential,
// real nonsymmetric eigendecomposition. Matrix storage is Eigen; the matrix
// exponential is a Padé-13 scaling-and-squaring evaluation.

#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "sleraman/errors.hpp"

namespace sleraman {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

// Smallest acceptable pivot before a resolvent counts as exactly singular.
inline constexpr double kPivotFloor = 1e-300;

namespace detail {

inline void check_square(const ComplexMatrix& a, const char* who) {
    if (a.rows() != a.cols())
        throw DimensionMismatch(std::string(who) + ": matrix must be square");
}

inline void check_pivots(const Eigen::PartialPivLU<ComplexMatrix>& lu, const char* who) {
    const auto& diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (std::abs(diag(i)) < kPivotFloor)
            throw SingularMatrix(std::string(who) + ": pivot below 1e-300 at index " +
                                 std::to_string(i));
    }
}

} // namespace detail

// Solve A x = b with partial pivoting.
inline ComplexVector lu_solve(const ComplexMatrix& a, const ComplexVector& b) {
    detail::check_square(a, "lu_solve");
    if (a.rows() != b.size())
        throw DimensionMismatch("lu_solve: rhs dimension mismatch");
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    detail::check_pivots(lu, "lu_solve");
    return lu.solve(b);
}

// Solve A^T y = ones, giving the row vector 1^T A^{-1}. Used for trace-closed
// resolvent contractions without forming the full inverse.
inline ComplexVector lu_solve_ones_row(const ComplexMatrix& a) {
    detail::check_square(a, "lu_solve_ones_row");
    Eigen::PartialPivLU<ComplexMatrix> lu(a.transpose());
    detail::check_pivots(lu, "lu_solve_ones_row");
    return lu.solve(ComplexVector::Ones(a.rows()));
}

inline ComplexMatrix lu_inverse(const ComplexMatrix& a, const char* who = "lu_inverse") {
    detail::check_square(a, who);
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    detail::check_pivots(lu, who);
    return lu.inverse();
}

// e^A by Padé order 13 with scaling and squaring (theta_13 threshold).
inline ComplexMatrix expm(const ComplexMatrix& a) {
    detail::check_square(a, "expm");
    const Eigen::Index n = a.rows();
    if (n == 0) return ComplexMatrix(0, 0);

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    ComplexMatrix as = a;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        as /= std::pow(2.0, squarings);
    }

    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = as * as;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    ComplexMatrix u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                            b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                      b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

    Eigen::PartialPivLU<ComplexMatrix> lu(v - u);
    detail::check_pivots(lu, "expm");
    ComplexMatrix r = lu.solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

inline RealMatrix expm(const RealMatrix& a) {
    return expm(ComplexMatrix(a.cast<Complex>())).real();
}

struct EigenDecomposition {
    ComplexVector eigenvalues;
    ComplexMatrix rightVectors; // columns
    ComplexMatrix leftInverse;  // rightVectors^{-1}
    double residualNorm = 0.0;  // max-norm of A - V diag(w) V^{-1}
};

// Full complex eigendecomposition of a real square matrix. Throws NoConvergence
// when the QR iteration fails or the eigenvector basis does not reconstruct A
// (defective input); callers fall back to expm/LU-resolvent paths.
inline EigenDecomposition eig_real_nonsymmetric(const RealMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("eig_real_nonsymmetric: matrix must be square");
    Eigen::EigenSolver<RealMatrix> solver(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("eig_real_nonsymmetric: QR iteration did not converge");

    EigenDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.rightVectors = solver.eigenvectors();

    Eigen::PartialPivLU<ComplexMatrix> lu(dec.rightVectors);
    const auto& diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (std::abs(diag(i)) < 1e-14 * dec.rightVectors.cwiseAbs().maxCoeff())
            throw NoConvergence("eig_real_nonsymmetric: eigenvector basis is singular");
    }
    dec.leftInverse = lu.inverse();

    const ComplexMatrix rebuilt =
        dec.rightVectors * dec.eigenvalues.asDiagonal() * dec.leftInverse;
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    dec.residualNorm = (rebuilt - a.cast<Complex>()).cwiseAbs().maxCoeff();
    if (dec.residualNorm > 1e-10 * scale)
        throw NoConvergence("eig_real_nonsymmetric: reconstruction residual " +
                            std::to_string(dec.residualNorm / scale) + " exceeds 1e-10");
    return dec;
}

} // namespace sleraman
