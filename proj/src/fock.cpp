#include "steerkit/fock.hpp"

#include <cmath>

namespace steerkit {

namespace {
const Complex kI(0.0, 1.0);
}

Matrix mode_lower(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

OperatorSet build_operator_set(const BipartiteBasis& basis) {
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("build_operator_set: fock basis required");

    OperatorSet s;
    s.basis = basis;
    s.a = lift_a(basis, mode_lower(basis.dim_a));
    s.b = lift_b(basis, mode_lower(basis.dim_b));
    s.adag = s.a.adjoint();
    s.bdag = s.b.adjoint();

    const double rt2 = std::sqrt(2.0);
    s.x_a = (s.a + s.adag) / rt2;
    s.p_a = (s.a - s.adag) / (rt2 * kI);
    s.x_b = (s.b + s.bdag) / rt2;
    s.p_b = (s.b - s.bdag) / (rt2 * kI);

    // U = (xp + px)/2 = (a^2 - a^dag^2)/(2i); V = (xp - px)/(2i).
    s.u_a = (s.x_a * s.p_a + s.p_a * s.x_a) / 2.0;
    s.u_b = (s.x_b * s.p_b + s.p_b * s.x_b) / 2.0;
    s.v_a = (s.x_a * s.p_a - s.p_a * s.x_a) / (2.0 * kI);
    s.v_b = (s.x_b * s.p_b - s.p_b * s.x_b) / (2.0 * kI);

    s.sx = (s.bdag * s.a + s.adag * s.b) / 2.0;
    s.sy = (s.bdag * s.a - s.adag * s.b) / (2.0 * kI);
    s.n_a = s.adag * s.a;
    s.n_b = s.bdag * s.b;
    s.n = s.n_a + s.n_b;
    s.n_minus = s.n_b - s.n_a;
    s.sz = s.n_minus / 2.0;

    s.sx2 = s.sx * s.sx;
    s.sy2 = s.sy * s.sy;
    s.sz2 = s.sz * s.sz;
    return s;
}

std::pair<Matrix, Matrix> two_mode_quadrature(const OperatorSet& set, double theta,
                                              int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("two_mode_quadrature: sign must be +1 or -1");
    const double sg = double(sign);
    const Complex em = std::exp(-kI * theta), ep = std::exp(kI * theta);
    Matrix x = 0.5 * (em * set.a + sg * ep * set.b + ep * set.adag + sg * em * set.bdag);
    const double tp = theta + M_PI / 2.0;
    const Complex em2 = std::exp(-kI * tp), ep2 = std::exp(kI * tp);
    Matrix p =
        0.5 * (em2 * set.a + sg * ep2 * set.b + ep2 * set.adag + sg * em2 * set.bdag);
    return {std::move(x), std::move(p)};
}

}  // namespace steerkit
