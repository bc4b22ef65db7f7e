#include "steerkit/dense.hpp"

#include <stdexcept>

namespace steerkit {

MatrixOperator::MatrixOperator(BipartiteBasis basis_, Matrix mat_, bool hermitian)
    : basis(std::move(basis_)), mat(std::move(mat_)), hermitian_hint(hermitian) {
    if (mat.rows() != basis.dim() || mat.cols() != basis.dim())
        throw std::invalid_argument("MatrixOperator: dimension does not match basis");
    if (hermitian_hint && hermiticity_defect(mat) > kTol)
        throw std::invalid_argument("MatrixOperator: hermitian_hint violated");
}

DensityOperator::DensityOperator(BipartiteBasis basis, Matrix mat, SsrStatus ssr)
    : basis_(std::move(basis)), mat_(std::move(mat)), ssr_(ssr) {
    if (mat_.rows() != basis_.dim() || mat_.cols() != basis_.dim())
        throw std::invalid_argument("DensityOperator: dimension does not match basis");
    if (hermiticity_defect(mat_) > kTol)
        throw std::invalid_argument("DensityOperator: not Hermitian");
    if (std::abs(mat_.trace() - Complex(1.0)) > kTol)
        throw std::invalid_argument("DensityOperator: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

Complex expectation(const Matrix& op, const DensityOperator& rho) {
    if (op.rows() != rho.mat().rows() || op.cols() != rho.mat().cols())
        throw std::invalid_argument("expectation: dimension mismatch");
    return (op * rho.mat()).trace();
}

Complex expectation(const MatrixOperator& op, const DensityOperator& rho) {
    if (!(op.basis == rho.basis()))
        throw std::invalid_argument("expectation: basis mismatch");
    return expectation(op.mat, rho);
}

double real_expectation(const Matrix& op, const DensityOperator& rho) {
    return expectation(op, rho).real();
}

double variance(const Matrix& op, const DensityOperator& rho) {
    if (hermiticity_defect(op) > kTol)
        throw std::invalid_argument("variance: operator not Hermitian");
    // one product: <op> = tr(M), <op^2> = tr(op M) with M = op rho
    const Matrix m = op * rho.mat();
    const double m1 = m.trace().real();
    const double m2 = op.cwiseProduct(m.transpose()).sum().real();
    return std::max(0.0, m2 - m1 * m1);
}

double variance(const MatrixOperator& op, const DensityOperator& rho) {
    if (!(op.basis == rho.basis()))
        throw std::invalid_argument("variance: basis mismatch");
    return variance(op.mat, rho);
}

Matrix guard_projector(const BipartiteBasis& basis, int band) {
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("guard_projector: fock basis required");
    Matrix p = Matrix::Zero(basis.dim(), basis.dim());
    for (int na = 0; na <= basis.n_max_a - band; ++na)
        for (int nb = 0; nb <= basis.n_max_b - band; ++nb)
            p(basis.flat(na, nb), basis.flat(na, nb)) = 1.0;
    return p;
}

Matrix total_n_projector(const BipartiteBasis& basis, int n_total_max) {
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("total_n_projector: fock basis required");
    Matrix p = Matrix::Zero(basis.dim(), basis.dim());
    for (int na = 0; na <= basis.n_max_a; ++na)
        for (int nb = 0; nb <= basis.n_max_b; ++nb)
            if (na + nb <= n_total_max) p(basis.flat(na, nb), basis.flat(na, nb)) = 1.0;
    return p;
}

Matrix identity(const BipartiteBasis& basis) {
    return Matrix::Identity(basis.dim(), basis.dim());
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix lift_a(const BipartiteBasis& basis, const Matrix& m) {
    if (m.rows() != basis.dim_a || m.cols() != basis.dim_a)
        throw std::invalid_argument("lift_a: dimension mismatch");
    return kron(m, Matrix::Identity(basis.dim_b, basis.dim_b));
}

Matrix lift_b(const BipartiteBasis& basis, const Matrix& m) {
    if (m.rows() != basis.dim_b || m.cols() != basis.dim_b)
        throw std::invalid_argument("lift_b: dimension mismatch");
    return kron(Matrix::Identity(basis.dim_a, basis.dim_a), m);
}

}  // namespace steerkit
