// Solvers for the shifted finite section J_N - z: block tridiagonal with
// diagonal blocks A_k = B(k) - z I and identity off-diagonal blocks.
//
// Two routes are provided:
//   * a block Thomas solve for a general right-hand side (forward
//     elimination from site 1, back substitution), and
//   * a backward Schur-complement sweep producing the leading blocks
//       S_k = leading d x d block of the inverse of the section on sites
//             k..N,   via   S_N = A_N^{-1},  S_k = (A_k - S_{k+1})^{-1}.
// The sweep is the elimination order that stays accurate for resolvent
// quantities at nonreal z: every S_k is bounded by 1/|Im z|, so errors do
// not compound with the transfer-matrix growth rate. S_1 equals the
// site-(1,1) resolvent block (J_N - z)^{-1}_{11}.

#pragma once

#include "weyl/linalg.hpp"
#include "weyl/potential.hpp"

#include <sstream>
#include <vector>

namespace weyl {

namespace detail {

inline ComplexMatrix shifted_block(const Potential& p, Complex z, int k) {
    const int d = p.dim();
    return p(k).cast<Complex>() - z * ComplexMatrix::Identity(d, d);
}

inline ComplexMatrix invert_shift_block(const ComplexMatrix& a, Complex z, int k, int n_sites) {
    const int d = static_cast<int>(a.rows());
    double cond = condition_number(a);
    if (!(cond <= kConditionCap)) {
        std::ostringstream msg;
        msg << "block_tridiagonal: singular shift at site " << k << " of " << n_sites
            << " (z = " << z.real() << (z.imag() < 0 ? " - " : " + ")
            << std::abs(z.imag()) << "i, condition " << cond
            << "); z is at or near an eigenvalue of the finite section";
        throw singular_error(msg.str(), cond);
    }
    return a.colPivHouseholderQr().solve(ComplexMatrix::Identity(d, d));
}

}  // namespace detail

// S_1 only, O(1) memory. This is the full backward sweep with nothing kept.
inline ComplexMatrix leading_resolvent_block(const Potential& p, Complex z, int n_sites) {
    if (n_sites < 1) throw error("leading_resolvent_block: N must be >= 1");
    const int d = p.dim();
    ComplexMatrix s = ComplexMatrix::Zero(d, d);  // S_{N+1} = 0
    for (int k = n_sites; k >= 1; --k) {
        ComplexMatrix a = detail::shifted_block(p, z, k) - s;
        s = detail::invert_shift_block(a, z, k, n_sites);
    }
    return s;
}

// All leading blocks S_1..S_N; result[k-1] = S_k.
inline std::vector<ComplexMatrix> backward_schur_sweep(const Potential& p, Complex z,
                                                       int n_sites) {
    if (n_sites < 1) throw error("backward_schur_sweep: N must be >= 1");
    const int d = p.dim();
    std::vector<ComplexMatrix> s(static_cast<std::size_t>(n_sites));
    ComplexMatrix tail = ComplexMatrix::Zero(d, d);
    for (int k = n_sites; k >= 1; --k) {
        ComplexMatrix a = detail::shifted_block(p, z, k) - tail;
        tail = detail::invert_shift_block(a, z, k, n_sites);
        s[static_cast<std::size_t>(k - 1)] = tail;
    }
    return s;
}

// Block Thomas solve of (J_N - z) X = R for a blockwise right-hand side
// rhs[k-1] = R_k (each d x r). Returns the solution blocks X_1..X_N.
inline std::vector<ComplexMatrix> solve_shifted(const Potential& p, Complex z,
                                                const std::vector<ComplexMatrix>& rhs) {
    const int n_sites = static_cast<int>(rhs.size());
    if (n_sites < 1) throw error("solve_shifted: empty right-hand side");

    // Forward elimination: pivots d_k = A_k - d_{k-1}^{-1}, c_k = r_k - d_{k-1}^{-1} c_{k-1}.
    std::vector<ComplexMatrix> pivot_inv(static_cast<std::size_t>(n_sites));
    std::vector<ComplexMatrix> c(static_cast<std::size_t>(n_sites));
    ComplexMatrix pivot = detail::shifted_block(p, z, 1);
    pivot_inv[0] = detail::invert_shift_block(pivot, z, 1, n_sites);
    c[0] = rhs[0];
    for (int k = 2; k <= n_sites; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        pivot = detail::shifted_block(p, z, k) - pivot_inv[i - 1];
        pivot_inv[i] = detail::invert_shift_block(pivot, z, k, n_sites);
        c[i] = rhs[i] - pivot_inv[i - 1] * c[i - 1];
    }

    // Back substitution: x_N = d_N^{-1} c_N, x_k = d_k^{-1}(c_k - x_{k+1}).
    std::vector<ComplexMatrix> x(static_cast<std::size_t>(n_sites));
    x.back() = pivot_inv.back() * c.back();
    for (int k = n_sites - 1; k >= 1; --k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        x[i] = pivot_inv[i] * (c[i] - x[i + 1]);
    }
    return x;
}

}  // namespace weyl
