// Dense linear-algebra kernels shared by the m-function and disk modules:
// SVD condition numbers with a global singularity cap, condition-checked
// solves, and Hermitian eigendecomposition helpers (principal square root
// and inverse square root with an eigenvalue floor).

#pragma once

#include "weyl/errors.hpp"
#include "weyl/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <limits>
#include <sstream>
#include <string>

namespace weyl {

// Condition number above which a matrix counts as singular everywhere in the
// library.
inline constexpr double kConditionCap = 1e12;

// Eigenvalue floor for Hermitian inverse square roots; eigenvalues in
// (-kEigenvalueSlack, kEigenvalueFloor) are clamped to the floor, anything
// below -kEigenvalueSlack is a hard error.
inline constexpr double kEigenvalueFloor = 1e-14;
inline constexpr double kEigenvalueSlack = 1e-10;

// 2-norm condition number via singular values. Returns +inf when the
// smallest singular value underflows to zero.
inline double condition_number(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

// Solves A X = B with a column-pivoted factorization, rejecting matrices
// whose condition number exceeds the cap.
inline ComplexMatrix solve_checked(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const std::string& what,
                                   double cap = kConditionCap) {
    double cond = condition_number(a);
    if (!(cond <= cap)) {
        std::ostringstream msg;
        msg << what << ": matrix is numerically singular (condition " << cond
            << " exceeds cap " << cap << ")";
        throw singular_error(msg.str(), cond);
    }
    return a.colPivHouseholderQr().solve(b);
}

// Solves X A = B, i.e. X = B A^{-1}, with the same conditioning policy.
inline ComplexMatrix solve_right_checked(const ComplexMatrix& b, const ComplexMatrix& a,
                                         const std::string& what,
                                         double cap = kConditionCap) {
    ComplexMatrix xt = solve_checked(a.transpose(), b.transpose(), what, cap);
    return xt.transpose();
}

struct HermitianEigen {
    RealVector values;       // ascending
    ComplexMatrix vectors;   // unitary, columns are eigenvectors
};

// Eigendecomposition of the Hermitian part of a; the anti-Hermitian residue
// of the input is discarded (callers check it separately where it matters).
inline HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eigenvalue(const ComplexMatrix& hermitian) {
    return hermitian_eigen(hermitian).values.minCoeff();
}

inline double max_eigenvalue(const ComplexMatrix& hermitian) {
    return hermitian_eigen(hermitian).values.maxCoeff();
}

namespace detail {

inline void check_psd_spectrum(const RealVector& values, const std::string& what) {
    double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if (values.minCoeff() < -kEigenvalueSlack * scale) {
        std::ostringstream msg;
        msg << what << ": matrix has a negative eigenvalue " << values.minCoeff()
            << " beyond the tolerance " << -kEigenvalueSlack * scale;
        throw error(msg.str());
    }
}

}  // namespace detail

// Principal square root of a Hermitian positive-semidefinite matrix.
// Eigenvalues within the slack of zero are clamped to zero.
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& a,
                                    const std::string& what = "hermitian_sqrt") {
    HermitianEigen eig = hermitian_eigen(a);
    detail::check_psd_spectrum(eig.values, what);
    RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

// Principal inverse square root of a Hermitian positive-definite matrix,
// with the eigenvalue floor guarding against division blow-up.
inline ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& a,
                                            const std::string& what = "hermitian_inverse_sqrt") {
    HermitianEigen eig = hermitian_eigen(a);
    detail::check_psd_spectrum(eig.values, what);
    RealVector floored = eig.values.cwiseMax(kEigenvalueFloor);
    RealVector roots = floored.cwiseSqrt().cwiseInverse();
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace weyl
