// Potentials: deterministic generators of the real symmetric d x d diagonal
// blocks B(n), n >= 1, of a block Jacobi operator with identity off-diagonal
// blocks. Evaluation is pure and reentrant: B(n) depends only on the kind,
// its parameters, and n, so instances can be shared freely across threads.

#pragma once

#include "weyl/errors.hpp"
#include "weyl/types.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace weyl {

enum class PotentialKind {
    Zero,             // B(n) = 0
    ConstantDiagonal, // B(n) = diag(values), independent of n
    Periodic,         // B(n) = list[(n-1) mod period]
    RandomSymmetric,  // entries uniform in [-scale, scale], seeded per site
    ExplicitList,     // B(n) = list[n-1] for n <= list size, 0 beyond
};

// Plain specification mirroring the JSON schema consumed by the CLI.
// Unused fields for a given kind are ignored.
struct PotentialSpec {
    int d = 1;
    PotentialKind kind = PotentialKind::Zero;
    std::vector<double> diagonal;     // constant-diagonal: 1 value (broadcast) or d values
    int period = 1;                   // periodic
    std::uint64_t seed = 0;           // random-symmetric
    double scale = 1.0;               // random-symmetric entry bound
    std::vector<RealMatrix> values;   // periodic / explicit-list blocks
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stateless per-site generator: a short splitmix64 stream keyed by
// (seed, site). Mapping raw 64-bit words to [0, 1) by hand keeps the values
// identical across standard libraries.
class SiteStream {
  public:
    SiteStream(std::uint64_t seed, int site)
        : state_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(site)))) {}

    double uniform() {  // in [0, 1)
        state_ = splitmix64(state_);
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

}  // namespace detail

// A validated potential. Immutable after construction.
class Potential {
  public:
    static Potential make(const PotentialSpec& spec);

    int dim() const { return spec_.d; }
    PotentialKind kind() const { return spec_.kind; }
    const PotentialSpec& spec() const { return spec_; }

    // Declared bound on |B(n)_{ij}| over all sites.
    double bound() const { return bound_; }

    // B(n) for n >= 1. Pure: identical inputs give bit-identical blocks.
    RealMatrix operator()(int n) const {
        if (n < 1) throw error("Potential: site index must be >= 1");
        const int d = spec_.d;
        switch (spec_.kind) {
            case PotentialKind::Zero:
                return RealMatrix::Zero(d, d);
            case PotentialKind::ConstantDiagonal: {
                RealMatrix b = RealMatrix::Zero(d, d);
                for (int i = 0; i < d; ++i)
                    b(i, i) = spec_.diagonal.size() == 1 ? spec_.diagonal[0]
                                                         : spec_.diagonal[static_cast<std::size_t>(i)];
                return b;
            }
            case PotentialKind::Periodic:
                return spec_.values[static_cast<std::size_t>((n - 1) % spec_.period)];
            case PotentialKind::RandomSymmetric: {
                detail::SiteStream stream(spec_.seed, n);
                RealMatrix b(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = i; j < d; ++j) {
                        double v = spec_.scale * (2.0 * stream.uniform() - 1.0);
                        b(i, j) = v;
                        b(j, i) = v;
                    }
                return b;
            }
            case PotentialKind::ExplicitList: {
                std::size_t idx = static_cast<std::size_t>(n - 1);
                if (idx < spec_.values.size()) return spec_.values[idx];
                return RealMatrix::Zero(d, d);  // compactly supported tail
            }
        }
        throw error("Potential: unknown kind");
    }

  private:
    explicit Potential(PotentialSpec spec, double bound)
        : spec_(std::move(spec)), bound_(bound) {}

    PotentialSpec spec_;
    double bound_;
};

inline Potential Potential::make(const PotentialSpec& spec) {
    if (spec.d < 1) throw error("make_potential: block dimension d must be >= 1");
    PotentialSpec s = spec;
    double bound = 0.0;

    auto check_blocks = [&](const std::vector<RealMatrix>& blocks, const char* role) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const RealMatrix& b = blocks[k];
            if (b.rows() != s.d || b.cols() != s.d) {
                std::ostringstream msg;
                msg << "make_potential: " << role << " matrix " << k + 1 << " is "
                    << b.rows() << "x" << b.cols() << ", expected " << s.d << "x" << s.d;
                throw error(msg.str());
            }
            if (b != b.transpose().eval()) {
                std::ostringstream msg;
                msg << "make_potential: " << role << " matrix " << k + 1
                    << " is not symmetric";
                throw error(msg.str());
            }
            bound = std::max(bound, b.cwiseAbs().maxCoeff());
        }
    };

    switch (s.kind) {
        case PotentialKind::Zero:
            break;
        case PotentialKind::ConstantDiagonal:
            if (s.diagonal.empty())
                throw error("make_potential: constant-diagonal needs a value");
            if (s.diagonal.size() != 1 && s.diagonal.size() != static_cast<std::size_t>(s.d))
                throw error("make_potential: constant-diagonal needs 1 or d values");
            for (double v : s.diagonal) bound = std::max(bound, std::abs(v));
            break;
        case PotentialKind::Periodic:
            if (s.period < 1) throw error("make_potential: period must be >= 1");
            if (s.values.size() != static_cast<std::size_t>(s.period))
                throw error("make_potential: periodic needs exactly `period` matrices");
            check_blocks(s.values, "periodic");
            break;
        case PotentialKind::RandomSymmetric:
            if (s.scale < 0.0) throw error("make_potential: scale must be >= 0");
            bound = s.scale;
            break;
        case PotentialKind::ExplicitList:
            check_blocks(s.values, "explicit");
            break;
    }
    return Potential(std::move(s), bound);
}

inline Potential make_potential(const PotentialSpec& spec) { return Potential::make(spec); }

// Shorthand used all over the tests: the free operator B(n) = 0.
inline Potential zero_potential(int d) {
    PotentialSpec spec;
    spec.d = d;
    spec.kind = PotentialKind::Zero;
    return make_potential(spec);
}

inline Potential random_potential(int d, std::uint64_t seed, double scale) {
    PotentialSpec spec;
    spec.d = d;
    spec.kind = PotentialKind::RandomSymmetric;
    spec.seed = seed;
    spec.scale = scale;
    return make_potential(spec);
}

}  // namespace weyl
