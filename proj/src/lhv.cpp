#include "steerkit/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace steerkit {

namespace {

void check_dist(const DiscreteLhvModel::OutcomeDist& d, const char* where) {
    if (d.outcomes.size() != d.probs.size() || d.outcomes.empty())
        throw std::invalid_argument(std::string(where) + ": malformed distribution");
    double s = 0.0;
    for (double p : d.probs) {
        if (p < -kTol)
            throw std::invalid_argument(std::string(where) + ": negative probability");
        s += p;
    }
    if (std::abs(s - 1.0) > kTol)
        throw std::invalid_argument(std::string(where) + ": probabilities must sum to 1");
}

// merge an outcome value into a label list with absolute tolerance
size_t merge_outcome(std::vector<double>& labels, double v) {
    for (size_t i = 0; i < labels.size(); ++i)
        if (std::abs(labels[i] - v) <= 1e-9) return i;
    labels.push_back(v);
    return labels.size() - 1;
}

double mean_nb(const DensityOperator& rho_b) {
    double m = 0.0;
    for (Eigen::Index n = 0; n < rho_b.mat().rows(); ++n)
        m += double(n) * rho_b.mat()(n, n).real();
    return m;
}

}  // namespace

void DiscreteLhvModel::validate() const {
    if (lambdas.empty())
        throw std::invalid_argument("DiscreteLhvModel: no lambdas");
    double w = 0.0;
    for (const auto& l : lambdas) {
        if (l.weight <= 0.0)
            throw std::invalid_argument("DiscreteLhvModel: weights must be positive");
        w += l.weight;
        for (const auto& [name, d] : l.side_a) check_dist(d, "DiscreteLhvModel(A)");
        for (const auto& [name, d] : l.side_b) check_dist(d, "DiscreteLhvModel(B)");
    }
    if (std::abs(w - 1.0) > kTol)
        throw std::invalid_argument("DiscreteLhvModel: weights must sum to 1");
}

ProbTable lhv_joint_probability(const DiscreteLhvModel& model, const std::string& obs_a,
                                const std::string& obs_b) {
    model.validate();
    ProbTable t;
    // first pass: collect merged outcome labels
    for (const auto& l : model.lambdas) {
        auto ia = l.side_a.find(obs_a);
        auto ib = l.side_b.find(obs_b);
        if (ia == l.side_a.end() || ib == l.side_b.end())
            throw std::invalid_argument("lhv_joint_probability: observable missing");
        for (double v : ia->second.outcomes) merge_outcome(t.outcomes_a, v);
        for (double v : ib->second.outcomes) merge_outcome(t.outcomes_b, v);
    }
    std::sort(t.outcomes_a.begin(), t.outcomes_a.end());
    std::sort(t.outcomes_b.begin(), t.outcomes_b.end());
    t.joint = Eigen::MatrixXd::Zero(Eigen::Index(t.outcomes_a.size()),
                                    Eigen::Index(t.outcomes_b.size()));
    for (const auto& l : model.lambdas) {
        const auto& da = l.side_a.at(obs_a);
        const auto& db = l.side_b.at(obs_b);
        for (size_t i = 0; i < da.outcomes.size(); ++i)
            for (size_t j = 0; j < db.outcomes.size(); ++j) {
                size_t r = merge_outcome(t.outcomes_a, da.outcomes[i]);
                size_t c = merge_outcome(t.outcomes_b, db.outcomes[j]);
                t.joint(Eigen::Index(r), Eigen::Index(c)) +=
                    l.weight * da.probs[i] * db.probs[j];
            }
    }
    return t;
}

NoSignalingResult no_signaling_check(const DiscreteLhvModel& model, double tol) {
    model.validate();
    std::vector<std::string> names_a, names_b;
    for (const auto& [n, d] : model.lambdas.front().side_a) names_a.push_back(n);
    for (const auto& [n, d] : model.lambdas.front().side_b) names_b.push_back(n);

    double worst = 0.0;
    // A-marginal must not depend on the B observable, and vice versa
    for (const auto& na : names_a) {
        std::optional<std::pair<std::vector<double>, Eigen::VectorXd>> ref;
        for (const auto& nb : names_b) {
            ProbTable t = lhv_joint_probability(model, na, nb);
            Eigen::VectorXd m = t.marginal_a();
            if (!ref) {
                ref = {t.outcomes_a, m};
            } else {
                for (size_t i = 0; i < t.outcomes_a.size(); ++i) {
                    // align by outcome value
                    for (size_t k = 0; k < ref->first.size(); ++k)
                        if (std::abs(ref->first[k] - t.outcomes_a[i]) <= 1e-9)
                            worst = std::max(worst, std::abs(ref->second(Eigen::Index(k)) -
                                                             m(Eigen::Index(i))));
                }
            }
        }
    }
    for (const auto& nb : names_b) {
        std::optional<std::pair<std::vector<double>, Eigen::VectorXd>> ref;
        for (const auto& na : names_a) {
            ProbTable t = lhv_joint_probability(model, na, nb);
            Eigen::VectorXd m = t.marginal_b();
            if (!ref) {
                ref = {t.outcomes_b, m};
            } else {
                for (size_t j = 0; j < t.outcomes_b.size(); ++j) {
                    for (size_t k = 0; k < ref->first.size(); ++k)
                        if (std::abs(ref->first[k] - t.outcomes_b[j]) <= 1e-9)
                            worst = std::max(worst, std::abs(ref->second(Eigen::Index(k)) -
                                                             m(Eigen::Index(j))));
                }
            }
        }
    }
    return {worst <= tol, worst};
}

DiscreteLhvModel cat1_model_from_separable(
    const SeparableSpec& spec,
    const std::vector<std::pair<std::string, Matrix>>& obs_a,
    const std::vector<std::pair<std::string, Matrix>>& obs_b) {
    DiscreteLhvModel model;
    for (const auto& term : spec.terms) {
        DiscreteLhvModel::Lambda l;
        l.weight = term.weight;
        auto born = [](const Matrix& obs, const DensityOperator& rho) {
            SpectralDecomposition dec = spectral_decompose(obs);
            DiscreteLhvModel::OutcomeDist d;
            for (const auto& oc : dec.outcomes) {
                d.outcomes.push_back(oc.value);
                d.probs.push_back(std::max(0.0, real_expectation(oc.projector, rho)));
            }
            return d;
        };
        for (const auto& [name, obs] : obs_a) l.side_a[name] = born(obs, term.rho_a);
        for (const auto& [name, obs] : obs_b) l.side_b[name] = born(obs, term.rho_b);
        model.lambdas.push_back(std::move(l));
    }
    model.validate();
    return model;
}

void Cat2MomentModel::validate() const {
    if (lambdas.empty())
        throw std::invalid_argument("Cat2MomentModel: no lambdas");
    double w = 0.0;
    for (const auto& l : lambdas) {
        if (l.weight <= 0.0)
            throw std::invalid_argument("Cat2MomentModel: weights must be positive");
        w += l.weight;
        if (l.x2_a < l.x_a * l.x_a - kTol || l.p2_a < l.p_a * l.p_a - kTol)
            throw std::invalid_argument(
                "Cat2MomentModel: second moment below squared first moment");
        if (l.n_a() < -kTol)
            throw std::invalid_argument("Cat2MomentModel: negative boson number");
        const Matrix& b = l.rho_b.mat();
        for (Eigen::Index i = 0; i < b.rows(); ++i)
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                if (i != j && std::abs(b(i, j)) > kTol)
                    throw std::invalid_argument(
                        "Cat2MomentModel: hidden state must be number-diagonal");
    }
    if (std::abs(w - 1.0) > kTol)
        throw std::invalid_argument("Cat2MomentModel: weights must sum to 1");
}

Cat2Moments cat2_predicted_moments(const Cat2MomentModel& model) {
    model.validate();
    Cat2Moments m{};
    double mean_nc = 0.0, mean_nq = 0.0, mean_ncnq = 0.0;
    double var_lb = 0.0, quad = 0.0;
    for (const auto& l : model.lambdas) {
        const double nc = l.n_a();
        const double nq = mean_nb(l.rho_b);
        mean_nc += l.weight * nc;
        mean_nq += l.weight * nq;
        mean_ncnq += l.weight * nc * nq;
        // per-lambda <S_x^2> with quantum LHS moments <x_B^2> = N_B + 1/2,
        // <U_B> = 0, <V_B> = 1/2; the cross terms reduce to -V_A/4
        var_lb += l.weight * (0.5 * (nc + l.v_a) * (nq + 0.5) - 0.25 * l.v_a);
        // two-mode quadrature second moment with SSR-constrained moments on
        // both sides; theta- and sign-independent
        quad += l.weight * (0.5 * (nc + 0.5) + 0.5 * (nq + 0.5));
    }
    const bool b_steered = model.steered == Steered::B;
    m.mean_sx = 0.0;
    m.mean_sy = 0.0;
    m.mean_n_a = b_steered ? mean_nc : mean_nq;
    m.mean_n_b = b_steered ? mean_nq : mean_nc;
    m.mean_sz = 0.5 * (m.mean_n_b - m.mean_n_a);
    m.mean_n = mean_nc + mean_nq;
    m.mean_na_nb = mean_ncnq;
    m.var_sx_lb = var_lb;
    m.var_sy_lb = var_lb;
    m.quad_var = quad;
    m.corr_lhs = 0.0;
    return m;
}

bool BoundReport::all_hold() const {
    for (const auto& e : entries)
        if (!e.holds) return false;
    return true;
}

double BoundReport::min_slack() const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) s = std::min(s, e.slack);
    return s;
}

BoundReport verify_cat2_bounds(const Cat2MomentModel& model) {
    const Cat2Moments m = cat2_predicted_moments(model);
    BoundReport r;
    auto add = [&r](const std::string& name, double lhs, double rhs) {
        double slack = lhs - rhs;
        r.entries.push_back({name, lhs, rhs, slack, slack >= -kMarginEps});
    };

    const double quarter_n = 0.25 * m.mean_n;
    const double var_floor = 0.5 * m.mean_na_nb + 0.25 * m.mean_n_a + 0.25 * m.mean_n_b;
    add("var_sx_floor", m.var_sx_lb, var_floor);
    add("var_sy_floor", m.var_sy_lb, var_floor);
    add("sz_bound", quarter_n, 0.5 * std::abs(m.mean_sz));
    add("spin_squeeze_sx", m.var_sx_lb, 0.5 * std::abs(m.mean_sz));
    add("spin_squeeze_sy", m.var_sy_lb, 0.5 * std::abs(m.mean_sz));
    add("hz_floor", m.var_sx_lb + m.var_sy_lb, 0.5 * m.mean_n);

    const double quad_ref = 0.5 * m.mean_n + 0.5;
    add("quad_var_ge", m.quad_var, quad_ref);
    add("quad_var_le", quad_ref, m.quad_var);
    add("quad_var_floor", m.quad_var, 0.5);

    // generalized HZ chain: value >= <N_A N_B> + <N_steered>/2 >= 0
    const double sz_sign = model.steered == Steered::B ? 0.5 : -0.5;
    const double gen_hz =
        m.var_sx_lb + m.var_sy_lb - quarter_n + sz_sign * m.mean_sz;
    const double mean_n_steered =
        model.steered == Steered::B ? m.mean_n_b : m.mean_n_a;
    const double chain = m.mean_na_nb + 0.5 * mean_n_steered;
    add("gen_hz_vs_chain", gen_hz, chain);
    add("gen_hz_chain_nonneg", chain, 0.0);

    add("strong_corr_steering", m.mean_na_nb + 0.5 * mean_n_steered, m.corr_lhs);
    add("strong_corr_entangle", m.mean_na_nb, m.corr_lhs);
    add("bloch_zero", 0.0, std::max(std::abs(m.mean_sx), std::abs(m.mean_sy)));

    // key correlation inequality on first moments; the LHS side contributes
    // zero first moments so both sides vanish
    double key_rhs = 0.0;
    for (const auto& l : model.lambdas) {
        const double a2 = l.x_a * l.x_a + l.p_a * l.p_a;
        key_rhs += l.weight * 0.25 * a2 * 0.0;
    }
    add("key_inequality", key_rhs, m.corr_lhs);
    return r;
}

Cat2MomentModel sample_cat2_model(std::uint64_t seed, int n_lambda,
                                  const Cat2SampleRanges& ranges) {
    if (n_lambda < 1)
        throw std::invalid_argument("sample_cat2_model: n_lambda < 1");
    if (ranges.v_min > ranges.v_max || ranges.max_second_slack < 0.0 ||
        ranges.max_first_moment < 0.0 || ranges.max_n_a <= 0.0 || ranges.b_n_max < 0)
        throw std::invalid_argument("sample_cat2_model: infeasible ranges");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ufirst(-ranges.max_first_moment,
                                                  ranges.max_first_moment);
    std::uniform_real_distribution<double> uslack(0.0, ranges.max_second_slack);
    std::uniform_real_distribution<double> uu(ranges.u_min, ranges.u_max);
    std::uniform_real_distribution<double> uv(ranges.v_min, ranges.v_max);
    std::gamma_distribution<double> gamma(1.0, 1.0);

    Cat2MomentModel model;
    std::vector<double> w(static_cast<size_t>(n_lambda));
    double wsum = 0.0;
    for (auto& x : w) {
        x = gamma(rng);
        wsum += x;
    }

    const BipartiteBasis bb = single_mode(ranges.b_n_max);
    for (int i = 0; i < n_lambda; ++i) {
        double xa, pa, x2a, p2a, ua, va;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000)
                throw std::invalid_argument("sample_cat2_model: rejection stuck");
            xa = ufirst(rng);
            pa = ufirst(rng);
            x2a = xa * xa + uslack(rng);
            p2a = pa * pa + uslack(rng);
            ua = uu(rng);
            va = uv(rng);
            const double na = 0.5 * (x2a + p2a) - va;
            if (na >= 0.0 && na <= ranges.max_n_a) break;
        }
        RealVector diag(ranges.b_n_max + 1);
        double s = 0.0;
        for (Eigen::Index k = 0; k < diag.size(); ++k) {
            diag(k) = gamma(rng);
            s += diag(k);
        }
        diag /= s;
        Matrix mb = diag.cast<Complex>().asDiagonal();
        model.lambdas.push_back({w[size_t(i)] / wsum, xa, pa, x2a, p2a, ua, va,
                                 DensityOperator(bb, std::move(mb))});
    }
    model.validate();
    return model;
}

DensityOperator lhs_conditional_state(const Cat2MomentModel& model,
                                      const std::vector<double>& p_alpha_given_lambda) {
    model.validate();
    if (p_alpha_given_lambda.size() != model.lambdas.size())
        throw std::invalid_argument("lhs_conditional_state: length mismatch");
    double norm = 0.0;
    for (size_t i = 0; i < model.lambdas.size(); ++i) {
        if (p_alpha_given_lambda[i] < -kTol)
            throw std::invalid_argument("lhs_conditional_state: negative probability");
        norm += model.lambdas[i].weight * p_alpha_given_lambda[i];
    }
    if (norm <= 1e-14)
        throw conditioning_on_null_event("lhs_conditional_state: null conditioning");
    const BipartiteBasis& bb = model.lambdas.front().rho_b.basis();
    Matrix out = Matrix::Zero(bb.dim(), bb.dim());
    for (size_t i = 0; i < model.lambdas.size(); ++i)
        out += model.lambdas[i].weight * p_alpha_given_lambda[i] *
               model.lambdas[i].rho_b.mat();
    out /= norm;
    return DensityOperator(bb, std::move(out));
}

}  // namespace steerkit
