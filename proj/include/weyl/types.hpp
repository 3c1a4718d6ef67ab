// Shared scalar/matrix aliases and the small matrix helpers used throughout:
// the symplectic form J = [[0, I], [-I, 0]], matrix real/imaginary parts in
// the Herglotz sense (Im M = (M - M^*)/2i), and residual norms. All dense
// types are dynamically sized Eigen matrices; block dimensions d stay small
// (typically d <= 8) while lattice horizons N can be large.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace weyl {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Canonical symplectic form on C^{2d}: J = [[0, I], [-I, 0]].
inline ComplexMatrix symplectic_form(int d) {
    ComplexMatrix j = ComplexMatrix::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d) = ComplexMatrix::Identity(d, d);
    j.bottomLeftCorner(d, d) = -ComplexMatrix::Identity(d, d);
    return j;
}

inline RealMatrix real_symplectic_form(int d) {
    RealMatrix j = RealMatrix::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d) = RealMatrix::Identity(d, d);
    j.bottomLeftCorner(d, d) = -RealMatrix::Identity(d, d);
    return j;
}

// Hermitian (self-adjoint) part: (A + A^*)/2.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    return 0.5 * (a + a.adjoint());
}

// Matrix imaginary part in the Herglotz sense: Im M = (M - M^*)/(2i).
// Hermitian by construction; positive definite for Weyl matrices.
inline ComplexMatrix matrix_imag(const ComplexMatrix& m) {
    return (m - m.adjoint()) / Complex(0.0, 2.0);
}

// Matrix real part: Re M = (M + M^*)/2.
inline ComplexMatrix matrix_real(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

// Frobenius distance from transpose symmetry, ||M - M^T||_F.
inline double symmetry_residual(const ComplexMatrix& m) {
    return (m - m.transpose().eval()).norm();
}

// Frobenius distance from Hermitian symmetry, ||M - M^*||_F.
inline double hermiticity_residual(const ComplexMatrix& m) {
    return (m - m.adjoint().eval()).norm();
}

}  // namespace weyl
