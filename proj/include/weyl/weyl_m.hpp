// Weyl m-functions for the half-line block Jacobi operator, by three routes:
//
//   finite_m          boundary-value formula on [0, N],
//                       M = -(b2 V(N) + b1 V(N+1))^{-1} (b2 U(N) + b1 U(N+1)),
//                     built on the forward transfer recursion;
//   resolvent_m       site-(1,1) block of (J_N - z)^{-1} via the backward
//                     Schur sweep (the stable route for deep horizons);
//   m_from_solution   quotient -F(1) F(0)^{-1} of any square-summable
//                     matrix solution, invariant under right multiplication.
//
// For Im z > 0 every route lands in the Siegel upper half space: M = M^t and
// Im M = (M - M^*)/2i is positive definite. siegel_check reports both.
//
// weyl_solution builds F(n) = U(n) + V(n) M without forming the difference
// of two growing arrays: it splits F into the decaying Dirichlet solution at
// a matching horizon (generated stably by the backward sweep) plus
// V(n) (M - m_dirichlet). A naive U + V M evaluation loses all significant
// digits once the growth ratio squared passes 1/eps, around n = 38 already
// in the free scalar case at z = i.

#pragma once

#include "weyl/block_tridiagonal.hpp"
#include "weyl/boundary.hpp"
#include "weyl/linalg.hpp"
#include "weyl/solutions.hpp"

#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace weyl {

enum class MMethod { FiniteBeta, Resolvent, SolutionQuotient };

inline const char* to_string(MMethod m) {
    switch (m) {
        case MMethod::FiniteBeta: return "finite-beta";
        case MMethod::Resolvent: return "resolvent";
        case MMethod::SolutionQuotient: return "solution-quotient";
    }
    return "?";
}

struct WeylMatrix {
    ComplexMatrix M;
    Complex z;
    MMethod method = MMethod::FiniteBeta;
    int horizon = 0;
    std::optional<BoundaryCondition> boundary;
    // Condition number of the solved boundary combination (finite_m only).
    // The forward route loses roughly this factor times machine epsilon of
    // relative accuracy, so callers comparing routes at tight tolerances
    // should keep it moderate.
    double condition = 1.0;
};

struct SiegelReport {
    double symmetry_residual;    // ||M - M^t||_F
    double min_im_eigenvalue;    // smallest eigenvalue of Im M
    bool pass;
};

inline SiegelReport siegel_check(const ComplexMatrix& m, double tol = 1e-9) {
    double sym = symmetry_residual(m);
    double min_eig = min_eigenvalue(matrix_imag(m));
    return {sym, min_eig, sym <= tol * (1.0 + m.norm()) && min_eig > 0.0};
}

// Finite-interval m-function for a self-adjoint boundary condition at the
// far end. Throws singular_error when the boundary combination of V is
// numerically singular (possible near real z; guaranteed invertible for
// Im z > 0 in exact arithmetic).
inline WeylMatrix finite_m(const Potential& p, const BoundaryCondition& bc, int n_sites,
                           Complex z) {
    require_valid_boundary(bc, "finite_m");
    if (bc.dim() != p.dim()) throw error("finite_m: boundary dimension mismatch");
    if (n_sites < 1) throw error("finite_m: N must be >= 1");

    FundamentalSystem sys = fundamental_system(p, z, n_sites);
    ComplexMatrix b1 = bc.beta1.cast<Complex>();
    ComplexMatrix b2 = bc.beta2.cast<Complex>();
    ComplexMatrix denom = b2 * sys.v(n_sites) + b1 * sys.v(n_sites + 1);
    ComplexMatrix numer = b2 * sys.u(n_sites) + b1 * sys.u(n_sites + 1);

    double cond = condition_number(denom);
    if (!(cond <= kConditionCap)) {
        std::ostringstream msg;
        msg << "finite_m: boundary combination of V is numerically singular at N = "
            << n_sites << ", z = " << z.real() << " + " << z.imag() << "i (condition "
            << cond << ")";
        throw singular_error(msg.str(), cond);
    }
    ComplexMatrix m = -denom.colPivHouseholderQr().solve(numer);
    return {std::move(m), z, MMethod::FiniteBeta, n_sites, bc, cond};
}

// gamma = beta1^{-1} beta2, the reduced (real, symmetric) boundary
// parameter. Not every valid pair reduces: Neumann-type conditions have
// singular beta1, and the general finite_m form must be used instead.
inline RealMatrix gamma_reduction(const BoundaryCondition& bc) {
    require_valid_boundary(bc, "gamma_reduction");
    Eigen::JacobiSVD<RealMatrix> svd(bc.beta1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0 || smax / smin > kConditionCap)
        throw not_reducible_error(
            "gamma_reduction: beta1 is singular; this boundary condition has no "
            "gamma form, use the general finite_m formula");
    return svd.solve(bc.beta2);
}

// m_{ij}(z) as the site-(1,1) block of the truncated resolvent: the solve
// (J_N - z) X = E_1 with E_1 carrying the d site-1 unit vectors, read off at
// site 1. Realized as the backward Schur sweep, i.e. block elimination of
// that very system from the far end with the unused blocks discarded; needs
// O(1) memory, so horizons well past the transfer-growth cap are fine.
inline WeylMatrix resolvent_m(const Potential& p, int n_sites, Complex z) {
    if (n_sites < 1) throw error("resolvent_m: N must be >= 1");
    // m_{ij} = <delta_j, X delta_i> makes M the transpose of the site-1
    // block; the block is complex symmetric, so this is a no-op up to
    // rounding, but the convention is kept literal.
    ComplexMatrix m = leading_resolvent_block(p, z, n_sites).transpose();
    return {std::move(m), z, MMethod::Resolvent, n_sites, std::nullopt, 1.0};
}

// M = -F(1) F(0)^{-1} for any matrix solution whose columns span the
// square-summable subspace. Right multiplication of both blocks by an
// invertible C cancels.
inline ComplexMatrix m_from_solution(const ComplexMatrix& f0, const ComplexMatrix& f1) {
    return -solve_right_checked(f1, f0, "m_from_solution: F(0)");
}

// F(n) = U(n) + V(n) M for n = 0..N+1, evaluated stably (see file header).
// When M is within kLimitSnapTolerance (relative) of the horizon-matched
// Dirichlet m-function, the difference is treated as exactly zero: the two
// are then numerically indistinguishable, and keeping the rounding-level
// remainder would re-introduce the growing mode at machine-noise amplitude.
inline constexpr double kLimitSnapTolerance = 1e-13;

inline std::vector<ComplexMatrix> weyl_solution(const Potential& p, Complex z,
                                                const ComplexMatrix& m, int n_sites) {
    if (n_sites < 1) throw error("weyl_solution: N must be >= 1");
    const int d = p.dim();
    const int h = n_sites + 1;  // Dirichlet horizon matching the needed range

    std::vector<ComplexMatrix> s = backward_schur_sweep(p, z, h);  // s[k-1] = S_k
    ComplexMatrix m_dirichlet = s[0];

    ComplexMatrix delta = m - m_dirichlet;
    if (delta.norm() <= kLimitSnapTolerance * (1.0 + m_dirichlet.norm()))
        delta = ComplexMatrix::Zero(d, d);

    // Decaying part X(n): X(0) = -I, X(1) = m_dirichlet, X(k+1) = -S_{k+1} X(k).
    std::vector<ComplexMatrix> f(static_cast<std::size_t>(n_sites) + 2);
    f[0] = -ComplexMatrix::Identity(d, d);
    f[1] = m_dirichlet;
    for (int k = 1; k <= n_sites; ++k)
        f[static_cast<std::size_t>(k) + 1] = -s[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(k)];

    if (!delta.isZero(0.0)) {
        FundamentalSystem sys = fundamental_system(p, z, n_sites);
        for (int n = 0; n <= n_sites + 1; ++n)
            f[static_cast<std::size_t>(n)] += sys.v(n) * delta;
    }
    return f;
}

// Stieltjes inversion at height eps: (1/pi) Im M(x + i eps) per abscissa,
// with M from the resolvent route at truncation N. Each output is real
// symmetric and positive semidefinite up to rounding.
inline std::vector<RealMatrix> spectral_density(const Potential& p,
                                                const std::vector<double>& xs, double eps,
                                                int n_sites) {
    if (!(eps > 0.0)) throw error("spectral_density: eps must be > 0");
    std::vector<RealMatrix> out;
    out.reserve(xs.size());
    for (double x : xs) {
        WeylMatrix m = resolvent_m(p, n_sites, Complex(x, eps));
        out.push_back((matrix_imag(m.M) / EIGEN_PI).real());
    }
    return out;
}

}  // namespace weyl
