#ifndef STEERKIT_BASIS_HPP
#define STEERKIT_BASIS_HPP

#include <stdexcept>
#include <utility>

namespace steerkit {

enum class BasisKind { fock, qudit };

// Index space for a two-subsystem Hilbert space. Row-major flattening with
// subsystem A as the slow axis. For fock kind, basis labels are occupation
// numbers 0..n_max; for qudit kind, plain levels 0..d-1.
struct BipartiteBasis {
    BasisKind kind = BasisKind::fock;
    int dim_a = 0;
    int dim_b = 0;
    int n_max_a = -1;  // fock only
    int n_max_b = -1;

    static BipartiteBasis fock(int n_max_a, int n_max_b) {
        if (n_max_a < 0 || n_max_b < 0)
            throw std::invalid_argument("fock basis: n_max must be >= 0");
        BipartiteBasis b;
        b.kind = BasisKind::fock;
        b.n_max_a = n_max_a;
        b.n_max_b = n_max_b;
        b.dim_a = n_max_a + 1;
        b.dim_b = n_max_b + 1;
        return b;
    }

    static BipartiteBasis qudit(int d_a, int d_b) {
        if (d_a < 1 || d_b < 1)
            throw std::invalid_argument("qudit basis: dimensions must be >= 1");
        BipartiteBasis b;
        b.kind = BasisKind::qudit;
        b.dim_a = d_a;
        b.dim_b = d_b;
        return b;
    }

    int dim() const { return dim_a * dim_b; }

    int flat(int i_a, int i_b) const { return i_a * dim_b + i_b; }

    std::pair<int, int> split(int k) const { return {k / dim_b, k % dim_b}; }

    bool operator==(const BipartiteBasis&) const = default;
};

// A single bosonic mode, represented as a bipartite fock basis with a
// trivial (one-dimensional) second factor.
inline BipartiteBasis single_mode(int n_max) { return BipartiteBasis::fock(n_max, 0); }

}  // namespace steerkit

#endif
