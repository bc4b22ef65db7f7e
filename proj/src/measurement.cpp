#include "steerkit/measurement.hpp"

#include <algorithm>
#include <cmath>

namespace steerkit {

double ProbTable::mean_a() const {
    double m = 0.0;
    for (size_t i = 0; i < outcomes_a.size(); ++i)
        m += outcomes_a[i] * joint.row(Eigen::Index(i)).sum();
    return m;
}

double ProbTable::mean_b() const {
    double m = 0.0;
    for (size_t j = 0; j < outcomes_b.size(); ++j)
        m += outcomes_b[j] * joint.col(Eigen::Index(j)).sum();
    return m;
}

double ProbTable::mean_product() const {
    double m = 0.0;
    for (size_t i = 0; i < outcomes_a.size(); ++i)
        for (size_t j = 0; j < outcomes_b.size(); ++j)
            m += outcomes_a[i] * outcomes_b[j] * joint(Eigen::Index(i), Eigen::Index(j));
    return m;
}

SpectralDecomposition spectral_decompose(const Matrix& observable, double group_tol) {
    if (hermiticity_defect(observable) > kTol)
        throw std::invalid_argument("spectral_decompose: observable not Hermitian");
    if (group_tol <= 0.0)
        throw std::invalid_argument("spectral_decompose: group_tol must be positive");

    Eigen::SelfAdjointEigenSolver<Matrix> es(observable);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    const Eigen::Index dim = vals.size();

    const double range = vals(dim - 1) - vals(0);
    const double tol = group_tol * std::max(range, 1.0);

    SpectralDecomposition dec;
    Eigen::Index k = 0;
    while (k < dim) {
        Eigen::Index start = k;
        double sum = 0.0;
        Matrix proj = Matrix::Zero(dim, dim);
        // eigenvalues come sorted ascending; chain-merge near-degenerate ones
        while (k < dim && (k == start || vals(k) - vals(k - 1) <= tol)) {
            sum += vals(k);
            proj += vecs.col(k) * vecs.col(k).adjoint();
            ++k;
        }
        dec.outcomes.push_back(
            {sum / double(k - start), std::move(proj), int(k - start)});
    }
    return dec;
}

ProbTable joint_probability_table(const DensityOperator& rho, const Matrix& obs_a,
                                  const Matrix& obs_b) {
    const BipartiteBasis& basis = rho.basis();
    SpectralDecomposition da = spectral_decompose(obs_a);
    SpectralDecomposition db = spectral_decompose(obs_b);

    ProbTable t;
    for (const auto& oa : da.outcomes) t.outcomes_a.push_back(oa.value);
    for (const auto& ob : db.outcomes) t.outcomes_b.push_back(ob.value);
    t.joint.resize(Eigen::Index(da.outcomes.size()), Eigen::Index(db.outcomes.size()));
    for (size_t i = 0; i < da.outcomes.size(); ++i) {
        Matrix pa = lift_a(basis, da.outcomes[i].projector);
        for (size_t j = 0; j < db.outcomes.size(); ++j) {
            Matrix pb = lift_b(basis, db.outcomes[j].projector);
            double p = real_expectation(pa * pb, rho);
            t.joint(Eigen::Index(i), Eigen::Index(j)) = std::max(0.0, p);
        }
    }
    return t;
}

DensityOperator reduce(const DensityOperator& rho, Subsystem keep) {
    const BipartiteBasis& basis = rho.basis();
    const int da = basis.dim_a, db = basis.dim_b;
    Matrix out;
    if (keep == Subsystem::A) {
        out = Matrix::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k)
                    out(i, j) += rho.mat()(basis.flat(i, k), basis.flat(j, k));
    } else {
        out = Matrix::Zero(db, db);
        for (int i = 0; i < db; ++i)
            for (int j = 0; j < db; ++j)
                for (int k = 0; k < da; ++k)
                    out(i, j) += rho.mat()(basis.flat(k, i), basis.flat(k, j));
    }
    // clean up rounding from the sums so constructor invariants hold crisply
    out = Matrix((out + out.adjoint().eval()) / 2.0);
    BipartiteBasis rb = basis.kind == BasisKind::fock
                            ? single_mode(keep == Subsystem::A ? basis.n_max_a
                                                               : basis.n_max_b)
                            : BipartiteBasis::qudit(
                                  keep == Subsystem::A ? da : db, 1);
    return DensityOperator(rb, std::move(out));
}

ConditionalState conditional_state(const DensityOperator& rho, const Matrix& obs_a,
                                   int outcome_index) {
    SpectralDecomposition dec = spectral_decompose(obs_a);
    if (outcome_index < 0 || size_t(outcome_index) >= dec.outcomes.size())
        throw std::invalid_argument("conditional_state: outcome index out of range");
    const auto& oc = dec.outcomes[size_t(outcome_index)];
    Matrix proj = lift_a(rho.basis(), oc.projector);
    Matrix post = proj * rho.mat() * proj;
    double p = post.trace().real();
    if (p <= 1e-14)
        throw conditioning_on_null_event("conditional_state: outcome has zero probability");
    post /= p;
    post = Matrix((post + post.adjoint().eval()) / 2.0);
    return {DensityOperator(rho.basis(), std::move(post)), p, oc.value};
}

}  // namespace steerkit
