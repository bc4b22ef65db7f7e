#ifndef STEERKIT_STATES_HPP
#define STEERKIT_STATES_HPP

#include <cstdint>
#include <vector>

#include "steerkit/dense.hpp"

namespace steerkit {

struct Amplitude {
    int i_a;
    int i_b;
    Complex value;
};

// Normalized |psi><psi| from sparse amplitudes; ssr_status is computed.
DensityOperator pure_state(const BipartiteBasis& basis,
                           const std::vector<Amplitude>& amplitudes);

// Convex combination; weights must be positive and sum to 1 within kTol.
DensityOperator mixture(const std::vector<std::pair<double, DensityOperator>>& terms);

struct SeparableSpec {
    struct Term {
        double weight;
        DensityOperator rho_a;  // single-mode
        DensityOperator rho_b;
    };
    std::vector<Term> terms;
};

// Sum_R P_R rho_R^A (x) rho_R^B on the joint basis.
DensityOperator separable_state(const BipartiteBasis& basis, const SeparableSpec& spec);

struct SsrFlags {
    bool global_ok;
    bool local_a_ok;
    bool local_b_ok;
};

// Global: no coherences between total-number sectors. Local: reduced states
// diagonal in the number basis. Throws unsupported_basis on qudit bases.
SsrFlags check_ssr(const DensityOperator& rho);

// Dirichlet-weighted mixture over total-N sectors of Haar-random pure states
// within each sector; globally SSR compliant by construction.
DensityOperator random_ssr_state(const BipartiteBasis& basis, std::uint64_t seed,
                                 int max_total_n);

struct SeparableSample {
    DensityOperator state;
    SeparableSpec spec;
};

// Random mixture of products of diagonal (number-basis) single-mode states.
SeparableSample random_separable_ssr_state(const BipartiteBasis& basis,
                                           std::uint64_t seed, int n_terms);

struct WernerSpec {
    int d;
    double eta;

    double phi() const { return (1.0 - (d + 1) * eta) / d; }
};

// ((d-1+eta)/(d-1)) 1/d^2 - (eta/(d-1)) V/d on a d x d qudit basis, with V
// the flip operator. Throws invalid_argument when phi leaves [-1, 1].
DensityOperator werner_state(const WernerSpec& spec);

// Flip operator V|psi (x) chi> = |chi (x) psi> on a d x d qudit basis.
Matrix flip_operator(int d);

enum class Category {
    cat1_separable,
    cat2_lhs_entangled,
    cat3_steerable,
    cat3_or_4_steerable,
    boundary
};

Category werner_classify(int d, double eta);

const char* category_name(Category c);

// Truncated sech(r) sum_n tanh^n(r) |n,n>, renormalized. Throws
// truncation_too_small when the discarded tail weight exceeds 1e-8.
DensityOperator two_mode_squeezed_vacuum(const BipartiteBasis& basis, double r);

}  // namespace steerkit

#endif
