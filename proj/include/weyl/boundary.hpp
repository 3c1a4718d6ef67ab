// Self-adjoint boundary conditions at the far end of a finite interval:
// real pairs (beta1, beta2) with beta = [beta1, beta2] in R^{d x 2d}
// satisfying
//
//     beta beta^t = I_d,      beta J beta^t = 0,   J = [[0, I], [-I, 0]].
//
// The second condition says beta1 beta2^t is symmetric. Every valid pair is
// (Re C, Im C) for a unitary C, which is how random conditions are drawn in
// the verification suites. Dirichlet is (I, 0), Neumann (0, I).

#pragma once

#include "weyl/errors.hpp"
#include "weyl/types.hpp"

#include <sstream>

namespace weyl {

inline constexpr double kBoundaryTolerance = 1e-12;

struct BoundaryCondition {
    RealMatrix beta1;
    RealMatrix beta2;

    int dim() const { return static_cast<int>(beta1.rows()); }
};

struct BoundaryValidation {
    double orthogonality_residual;  // ||beta beta^t - I||_F
    double symplectic_residual;     // ||beta J beta^t||_F = ||beta1 beta2^t - beta2 beta1^t||_F
    bool pass;
};

// Report-style check of the two conditions above; never throws.
// Note the enforced normalization is beta beta^t = I_d (the d x d Gram of
// the rows); the 2d x 2d product beta^t beta can only be a rank-d projector.
inline BoundaryValidation validate_boundary(const RealMatrix& beta1,
                                            const RealMatrix& beta2) {
    const int d = static_cast<int>(beta1.rows());
    RealMatrix gram = beta1 * beta1.transpose() + beta2 * beta2.transpose();
    double orth = (gram - RealMatrix::Identity(d, d)).norm();
    RealMatrix twist = beta1 * beta2.transpose() - beta2 * beta1.transpose();
    double symp = twist.norm();
    bool pass = orth <= kBoundaryTolerance && symp <= kBoundaryTolerance;
    return {orth, symp, pass};
}

inline BoundaryValidation validate_boundary(const BoundaryCondition& bc) {
    return validate_boundary(bc.beta1, bc.beta2);
}

inline void require_valid_boundary(const BoundaryCondition& bc, const char* what) {
    if (bc.beta1.rows() != bc.beta1.cols() || bc.beta2.rows() != bc.beta2.cols() ||
        bc.beta1.rows() != bc.beta2.rows())
        throw error(std::string(what) + ": beta1 and beta2 must be square with equal size");
    BoundaryValidation v = validate_boundary(bc);
    if (!v.pass) {
        std::ostringstream msg;
        msg << what << ": invalid boundary condition (||beta beta^t - I|| = "
            << v.orthogonality_residual << ", ||beta J beta^t|| = "
            << v.symplectic_residual << ")";
        throw error(msg.str());
    }
}

inline BoundaryCondition dirichlet_boundary(int d) {
    return {RealMatrix::Identity(d, d), RealMatrix::Zero(d, d)};
}

inline BoundaryCondition neumann_boundary(int d) {
    return {RealMatrix::Zero(d, d), RealMatrix::Identity(d, d)};
}

// (Re C, Im C) is a valid pair iff C is unitary:
// beta beta^t + i (beta2 beta1^t - beta1 beta2^t) = C C^*.
inline BoundaryCondition boundary_from_unitary(const ComplexMatrix& c) {
    return {c.real(), c.imag()};
}

}  // namespace weyl
