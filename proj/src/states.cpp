#include "steerkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "steerkit/measurement.hpp"

namespace steerkit {

namespace {

bool is_diagonal(const Matrix& m, double tol = kTol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && std::abs(m(i, j)) > tol) return false;
    return true;
}

}  // namespace

DensityOperator pure_state(const BipartiteBasis& basis,
                           const std::vector<Amplitude>& amplitudes) {
    if (amplitudes.empty())
        throw std::invalid_argument("pure_state: no amplitudes");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
    for (const auto& a : amplitudes) {
        if (a.i_a < 0 || a.i_a >= basis.dim_a || a.i_b < 0 || a.i_b >= basis.dim_b)
            throw std::invalid_argument("pure_state: index out of range");
        psi(basis.flat(a.i_a, a.i_b)) += a.value;
    }
    const double norm = psi.norm();
    if (norm < 1e-14)
        throw std::invalid_argument("pure_state: zero vector");
    psi /= norm;
    Matrix rho = psi * psi.adjoint();
    DensityOperator out(basis, std::move(rho));
    if (basis.kind == BasisKind::fock) {
        SsrFlags f = check_ssr(out);
        out.set_ssr_status(f.global_ok ? SsrStatus::global_compliant
                                       : SsrStatus::noncompliant);
    }
    return out;
}

DensityOperator mixture(const std::vector<std::pair<double, DensityOperator>>& terms) {
    if (terms.empty())
        throw std::invalid_argument("mixture: no terms");
    double wsum = 0.0;
    for (const auto& [w, rho] : terms) {
        if (w <= 0.0)
            throw std::invalid_argument("mixture: weights must be positive");
        if (!(rho.basis() == terms.front().second.basis()))
            throw std::invalid_argument("mixture: basis mismatch");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > kTol)
        throw std::invalid_argument("mixture: weights must sum to 1");
    Matrix m = Matrix::Zero(terms.front().second.mat().rows(),
                            terms.front().second.mat().cols());
    for (const auto& [w, rho] : terms) m += w * rho.mat();
    return DensityOperator(terms.front().second.basis(), std::move(m));
}

DensityOperator separable_state(const BipartiteBasis& basis, const SeparableSpec& spec) {
    if (spec.terms.empty())
        throw std::invalid_argument("separable_state: no terms");
    double wsum = 0.0;
    Matrix m = Matrix::Zero(basis.dim(), basis.dim());
    for (const auto& t : spec.terms) {
        if (t.weight <= 0.0)
            throw std::invalid_argument("separable_state: weights must be positive");
        if (t.rho_a.mat().rows() != basis.dim_a || t.rho_b.mat().rows() != basis.dim_b)
            throw std::invalid_argument("separable_state: factor dimension mismatch");
        wsum += t.weight;
        m += t.weight * kron(t.rho_a.mat(), t.rho_b.mat());
    }
    if (std::abs(wsum - 1.0) > kTol)
        throw std::invalid_argument("separable_state: weights must sum to 1");
    DensityOperator out(basis, std::move(m));
    if (basis.kind == BasisKind::fock) {
        SsrFlags f = check_ssr(out);
        out.set_ssr_status(f.global_ok ? SsrStatus::global_compliant
                                       : SsrStatus::noncompliant);
    }
    return out;
}

SsrFlags check_ssr(const DensityOperator& rho) {
    const BipartiteBasis& basis = rho.basis();
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("check_ssr: fock basis required");
    SsrFlags f{true, true, true};
    for (int na = 0; na <= basis.n_max_a && f.global_ok; ++na)
        for (int nb = 0; nb <= basis.n_max_b && f.global_ok; ++nb)
            for (int ma = 0; ma <= basis.n_max_a && f.global_ok; ++ma)
                for (int mb = 0; mb <= basis.n_max_b; ++mb)
                    if (na + nb != ma + mb &&
                        std::abs(rho.mat()(basis.flat(na, nb), basis.flat(ma, mb))) >
                            kTol) {
                        f.global_ok = false;
                        break;
                    }
    f.local_a_ok = is_diagonal(reduce(rho, Subsystem::A).mat());
    f.local_b_ok = is_diagonal(reduce(rho, Subsystem::B).mat());
    return f;
}

DensityOperator random_ssr_state(const BipartiteBasis& basis, std::uint64_t seed,
                                 int max_total_n) {
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("random_ssr_state: fock basis required");
    // keep sectors two levels below truncation (guard band)
    if (max_total_n < 0 || max_total_n > std::min(basis.n_max_a, basis.n_max_b) - 2)
        throw std::invalid_argument("random_ssr_state: max_total_n out of range");

    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Dirichlet(1,...,1) sector weights
    std::vector<double> w(size_t(max_total_n) + 1);
    double wsum = 0.0;
    for (auto& x : w) {
        x = gamma(rng);
        wsum += x;
    }

    Matrix m = Matrix::Zero(basis.dim(), basis.dim());
    for (int n = 0; n <= max_total_n; ++n) {
        // basis states |n_a, n - n_a> with both occupations in range
        std::vector<int> idx;
        for (int na = std::max(0, n - basis.n_max_b);
             na <= std::min(n, basis.n_max_a); ++na)
            idx.push_back(basis.flat(na, n - na));
        Eigen::VectorXcd psi(idx.size());
        for (Eigen::Index k = 0; k < psi.size(); ++k)
            psi(k) = Complex(gauss(rng), gauss(rng));
        psi /= psi.norm();
        const double wn = w[size_t(n)] / wsum;
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c)
                m(idx[r], idx[c]) +=
                    wn * psi(Eigen::Index(r)) * std::conj(psi(Eigen::Index(c)));
    }
    return DensityOperator(basis, std::move(m), SsrStatus::global_compliant);
}

SeparableSample random_separable_ssr_state(const BipartiteBasis& basis,
                                           std::uint64_t seed, int n_terms) {
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("random_separable_ssr_state: fock basis required");
    if (n_terms < 1)
        throw std::invalid_argument("random_separable_ssr_state: n_terms < 1");

    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(1.0, 1.0);

    auto dirichlet = [&](int n) {
        RealVector v(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            v(i) = gamma(rng);
            s += v(i);
        }
        return RealVector(v / s);
    };

    // keep support two levels below truncation so every operator identity
    // used by the witness suite is exact on these samples
    const int sup_a = std::max(1, basis.dim_a - 2);
    const int sup_b = std::max(1, basis.dim_b - 2);

    SeparableSpec spec;
    RealVector weights = dirichlet(n_terms);
    for (int t = 0; t < n_terms; ++t) {
        RealVector da = RealVector::Zero(basis.dim_a);
        RealVector db = RealVector::Zero(basis.dim_b);
        da.head(sup_a) = dirichlet(sup_a);
        db.head(sup_b) = dirichlet(sup_b);
        Matrix ma = da.cast<Complex>().asDiagonal();
        Matrix mb = db.cast<Complex>().asDiagonal();
        spec.terms.push_back({weights(t),
                              DensityOperator(single_mode(basis.n_max_a), std::move(ma)),
                              DensityOperator(single_mode(basis.n_max_b), std::move(mb))});
    }
    DensityOperator state = separable_state(basis, spec);
    return {std::move(state), std::move(spec)};
}

Matrix flip_operator(int d) {
    Matrix v = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
    return v;
}

DensityOperator werner_state(const WernerSpec& spec) {
    if (spec.d < 2)
        throw std::invalid_argument("werner_state: d must be >= 2");
    const double phi = spec.phi();
    if (phi < -1.0 - kTol || phi > 1.0 + kTol)
        throw std::invalid_argument("werner_state: phi outside [-1, 1]");
    const int d = spec.d;
    const double eta = spec.eta;
    BipartiteBasis basis = BipartiteBasis::qudit(d, d);
    Matrix m = ((d - 1.0 + eta) / (d - 1.0)) / double(d * d) * identity(basis) -
               (eta / (d - 1.0)) / double(d) * flip_operator(d);
    return DensityOperator(basis, std::move(m));
}

Category werner_classify(int d, double eta) {
    const double blue = 1.0 / (d + 1.0);
    const double red = 1.0 - 1.0 / d;
    if (std::abs(eta - blue) <= 1e-12 || std::abs(eta - red) <= 1e-12)
        return Category::boundary;
    if (eta < blue) return Category::cat1_separable;
    if (eta < red) return Category::cat2_lhs_entangled;
    return d >= 3 ? Category::cat3_steerable : Category::cat3_or_4_steerable;
}

const char* category_name(Category c) {
    switch (c) {
        case Category::cat1_separable: return "Cat1_separable";
        case Category::cat2_lhs_entangled: return "Cat2_LHS_entangled";
        case Category::cat3_steerable: return "Cat3_steerable";
        case Category::cat3_or_4_steerable: return "Cat3_or_4_steerable";
        case Category::boundary: return "boundary";
    }
    return "?";
}

DensityOperator two_mode_squeezed_vacuum(const BipartiteBasis& basis, double r) {
    if (basis.kind != BasisKind::fock)
        throw unsupported_basis("two_mode_squeezed_vacuum: fock basis required");
    const int n_max = std::min(basis.n_max_a, basis.n_max_b);
    const double th = std::tanh(r), ch = std::cosh(r);
    const double tail = std::pow(th * th, n_max) / (ch * ch);
    if (tail > 1e-8)
        throw truncation_too_small("two_mode_squeezed_vacuum: tail weight above 1e-8");

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
    for (int n = 0; n <= n_max; ++n)
        psi(basis.flat(n, n)) = std::pow(th, n) / ch;
    psi /= psi.norm();
    Matrix m = psi * psi.adjoint();
    SsrStatus ssr = std::abs(r) < 1e-15 ? SsrStatus::global_compliant
                                        : SsrStatus::noncompliant;
    return DensityOperator(basis, std::move(m), ssr);
}

}  // namespace steerkit
