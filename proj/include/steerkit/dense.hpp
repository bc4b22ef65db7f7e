#ifndef STEERKIT_DENSE_HPP
#define STEERKIT_DENSE_HPP

#include "steerkit/basis.hpp"
#include "steerkit/common.hpp"

namespace steerkit {

// Dense operator tied to a bipartite basis. When hermitian_hint is set the
// constructor enforces hermiticity to kTol.
struct MatrixOperator {
    BipartiteBasis basis;
    Matrix mat;
    bool hermitian_hint = false;

    MatrixOperator(BipartiteBasis basis_, Matrix mat_, bool hermitian = false);
};

enum class SsrStatus { global_compliant, noncompliant, unchecked };

// Density operator with validated invariants: Hermitian within kTol, unit
// trace within kTol, eigenvalues >= -kPsdTol.
class DensityOperator {
public:
    DensityOperator(BipartiteBasis basis, Matrix mat,
                    SsrStatus ssr = SsrStatus::unchecked);

    const BipartiteBasis& basis() const { return basis_; }
    const Matrix& mat() const { return mat_; }
    SsrStatus ssr_status() const { return ssr_; }
    void set_ssr_status(SsrStatus s) { ssr_ = s; }

private:
    BipartiteBasis basis_;
    Matrix mat_;
    SsrStatus ssr_;
};

// Tr(op rho). Throws on basis mismatch; drops a spurious imaginary part only
// at the caller's discretion (the complex value is returned untouched).
Complex expectation(const MatrixOperator& op, const DensityOperator& rho);
Complex expectation(const Matrix& op, const DensityOperator& rho);
double real_expectation(const Matrix& op, const DensityOperator& rho);

// <op^2> - <op>^2 for Hermitian op, clamped at zero.
double variance(const MatrixOperator& op, const DensityOperator& rho);
double variance(const Matrix& op, const DensityOperator& rho);

// Diagonal 0/1 projector onto fock states with n_a <= n_max_a - band and
// n_b <= n_max_b - band. Truncated ladder products are exact there.
Matrix guard_projector(const BipartiteBasis& basis, int band = 2);

// Diagonal 0/1 projector onto total occupation n_a + n_b <= n_total_max.
Matrix total_n_projector(const BipartiteBasis& basis, int n_total_max);

// Identity on the joint space.
Matrix identity(const BipartiteBasis& basis);

// Lift a subsystem-local matrix to the joint space: m (x) 1_B or 1_A (x) m.
Matrix lift_a(const BipartiteBasis& basis, const Matrix& m);
Matrix lift_b(const BipartiteBasis& basis, const Matrix& m);

// Kronecker product with A as the slow index.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace steerkit

#endif
