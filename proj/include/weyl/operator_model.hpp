// Finite sections of the block Jacobi operator: the dN x dN real symmetric
// block-tridiagonal matrix with diagonal blocks B(1)..B(N) and identity
// off-diagonal blocks. Used as the dense resolvent oracle in tests; the
// production resolvent route never assembles it (see block_tridiagonal.hpp).

#pragma once

#include "weyl/boundary.hpp"
#include "weyl/potential.hpp"

#include <sstream>

namespace weyl {

// Dense dimension cap for assembled finite sections.
inline constexpr int kDenseDimensionCap = 4096;

struct TruncatedOperator {
    int d = 0;
    int n_sites = 0;
    RealMatrix matrix;  // dN x dN, symmetric, bandwidth 2d+1
};

inline TruncatedOperator truncated_matrix(const Potential& p, int n_sites,
                                          int max_dim = kDenseDimensionCap) {
    if (n_sites < 1) throw error("truncated_matrix: N must be >= 1");
    const int d = p.dim();
    const long long dim = static_cast<long long>(d) * n_sites;
    if (dim > max_dim) {
        std::ostringstream msg;
        msg << "truncated_matrix: dense dimension " << dim << " exceeds the cap "
            << max_dim << "; use the block-tridiagonal solver instead";
        throw size_cap_error(msg.str());
    }
    RealMatrix j = RealMatrix::Zero(dim, dim);
    for (int k = 0; k < n_sites; ++k) {
        j.block(k * d, k * d, d, d) = p(k + 1);
        if (k + 1 < n_sites) {
            j.block(k * d, (k + 1) * d, d, d) = RealMatrix::Identity(d, d);
            j.block((k + 1) * d, k * d, d, d) = RealMatrix::Identity(d, d);
        }
    }
    return {d, n_sites, std::move(j)};
}

}  // namespace weyl
