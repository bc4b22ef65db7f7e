#ifndef STEERKIT_FOCK_HPP
#define STEERKIT_FOCK_HPP

#include <utility>

#include "steerkit/dense.hpp"

namespace steerkit {

// Truncated single-mode annihilation operator, a|n> = sqrt(n)|n-1>.
Matrix mode_lower(int dim);

// Every two-mode operator used by the witness suite, built once per basis.
// Quadratures x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(sqrt(2) i); Schwinger
// spins S_x = (b^dag a + a^dag b)/2 etc.; auxiliaries U = (xp + px)/2 and
// V = (xp - px)/(2i). V equals 1/2 away from the truncation edge.
struct OperatorSet {
    BipartiteBasis basis;

    Matrix a, adag, b, bdag;
    Matrix x_a, p_a, x_b, p_b;
    Matrix u_a, u_b, v_a, v_b;
    Matrix sx, sy, sz;
    Matrix n_a, n_b, n, n_minus;
    Matrix sx2, sy2, sz2;
};

// Throws unsupported_basis for qudit bases.
OperatorSet build_operator_set(const BipartiteBasis& basis);

// Two-mode quadratures X_theta(s), P_theta(s) with s = +1 or -1;
// P_theta(s) = X_{theta+pi/2}(s).
std::pair<Matrix, Matrix> two_mode_quadrature(const OperatorSet& set, double theta,
                                              int sign);

}  // namespace steerkit

#endif
