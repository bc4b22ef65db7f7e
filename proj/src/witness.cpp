#include "steerkit/witness.hpp"

#include <cmath>
#include <limits>

namespace steerkit {

namespace {

struct SpinMoments {
    double sx, sy, sz;
    double var_sx, var_sy, var_sz;
    double n, n_a, n_b, na_nb;
};

SpinMoments spin_moments(const DensityOperator& rho, const OperatorSet& set) {
    SpinMoments m;
    m.sx = real_expectation(set.sx, rho);
    m.sy = real_expectation(set.sy, rho);
    m.sz = real_expectation(set.sz, rho);
    m.var_sx = std::max(0.0, real_expectation(set.sx2, rho) - m.sx * m.sx);
    m.var_sy = std::max(0.0, real_expectation(set.sy2, rho) - m.sy * m.sy);
    m.var_sz = std::max(0.0, real_expectation(set.sz2, rho) - m.sz * m.sz);
    m.n = real_expectation(set.n, rho);
    m.n_a = real_expectation(set.n_a, rho);
    m.n_b = real_expectation(set.n_b, rho);
    m.na_nb = real_expectation(set.n_a * set.n_b, rho);
    return m;
}

Verdict fire(double margin, double eps, Verdict kind) {
    return margin > eps ? kind : Verdict::inconclusive;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::entangled: return "entangled";
        case Verdict::steerable: return "steerable";
    }
    return "?";
}

TestRecord bloch_vector_test(const DensityOperator& rho, const OperatorSet& set,
                             const WitnessOptions& opt) {
    SpinMoments m = spin_moments(rho, set);
    TestRecord r;
    r.name = "bloch_vector";
    r.value = std::max(std::abs(m.sx), std::abs(m.sy));
    r.bound = 0.0;
    r.margin = r.value - r.bound;
    r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
    r.extras["mean_sx"] = m.sx;
    r.extras["mean_sy"] = m.sy;
    return r;
}

std::vector<TestRecord> spin_squeezing_test(const DensityOperator& rho,
                                            const OperatorSet& set,
                                            const WitnessOptions& opt) {
    SpinMoments m = spin_moments(rho, set);
    const double var[3] = {m.var_sx, m.var_sy, m.var_sz};
    const double mean[3] = {m.sx, m.sy, m.sz};
    const char* axis = "xyz";

    std::vector<TestRecord> out;
    for (int alpha = 0; alpha < 3; ++alpha)
        for (int beta = 0; beta < 3; ++beta) {
            if (alpha == beta) continue;
            const int gamma = 3 - alpha - beta;
            TestRecord r;
            r.name = std::string("spin_squeeze_") + axis[alpha] + axis[beta];
            r.bound = 0.5 * std::abs(mean[gamma]);
            r.value = var[alpha];
            // fires when S_alpha is squeezed and S_beta anti-squeezed
            r.margin = std::min(r.bound - var[alpha], var[beta] - r.bound);
            r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
            out.push_back(std::move(r));
        }
    return out;
}

TestRecord hz_test(const DensityOperator& rho, const OperatorSet& set,
                   const WitnessOptions& opt) {
    SpinMoments m = spin_moments(rho, set);
    if (m.n <= opt.epsilon)
        throw vacuous_test("hz_test: <N> is zero");
    TestRecord r;
    r.name = "hz";
    r.value = m.var_sx + m.var_sy - 0.5 * m.n;
    r.bound = 0.0;
    r.margin = -r.value;
    r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
    r.extras["e_hz"] = (m.var_sx + m.var_sy) / (0.5 * m.n);
    return r;
}

TestRecord generalized_hz_test(const DensityOperator& rho, const OperatorSet& set,
                               Steered steered, const WitnessOptions& opt) {
    SpinMoments m = spin_moments(rho, set);
    const double sz_sign = steered == Steered::B ? 0.5 : -0.5;
    TestRecord r;
    r.name = "generalized_hz";
    r.steered = steered;
    r.value = m.var_sx + m.var_sy - 0.25 * m.n + sz_sign * m.sz;
    r.bound = 0.0;
    r.margin = -r.value;
    r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
    if (m.n > opt.epsilon) {
        r.extras["e_hz"] = (m.var_sx + m.var_sy) / (0.5 * m.n);
        r.extras["ratio_bound"] =
            (steered == Steered::B ? m.n_a : m.n_b) / m.n;
    }
    return r;
}

TestRecord quad_squeeze_test(const DensityOperator& rho, const OperatorSet& set,
                             const WitnessOptions& opt) {
    if (opt.theta_points < 1)
        throw std::invalid_argument("quad_squeeze_test: empty theta grid");
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int k = 0; k < opt.theta_points; ++k) {
        const double theta = M_PI * double(k) / double(opt.theta_points);
        for (int sign : {+1, -1}) {
            auto [x, p] = two_mode_quadrature(set, theta, sign);
            for (const Matrix* q : {&x, &p}) {
                const double v = variance(*q, rho);
                if (v < best) {
                    best = v;
                    best_theta = theta;
                }
            }
        }
    }
    TestRecord r;
    r.name = "quad_squeeze";
    r.value = best;
    r.bound = 0.5;
    r.margin = r.bound - r.value;
    r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
    r.extras["best_theta"] = best_theta;
    r.extras["cat2_reference"] = 0.5 * real_expectation(set.n, rho) + 0.5;
    return r;
}

std::vector<TestRecord> correlation_tests(const DensityOperator& rho,
                                          const OperatorSet& set,
                                          const WitnessOptions& opt) {
    SpinMoments m = spin_moments(rho, set);
    const double corr = m.sx * m.sx + m.sy * m.sy;  // |<a^dag b>|^2

    std::vector<TestRecord> out;
    {
        TestRecord r;
        r.name = "weak_correlation";
        r.value = corr;
        r.bound = 0.0;
        r.margin = corr;
        r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
        out.push_back(std::move(r));
    }
    {
        TestRecord r;
        r.name = "strong_correlation_entangle";
        r.value = corr;
        r.bound = m.na_nb;
        r.margin = corr - r.bound;
        r.verdict = fire(r.margin, opt.epsilon, Verdict::entangled);
        out.push_back(std::move(r));
    }
    for (Steered s : {Steered::B, Steered::A}) {
        TestRecord r;
        r.name = "strong_correlation_steer";
        r.steered = s;
        r.value = corr;
        r.bound = m.na_nb + 0.5 * (s == Steered::B ? m.n_b : m.n_a);
        r.margin = corr - r.bound;
        r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TestRecord> category_inequality_panel(const DensityOperator& rho,
                                                  const OperatorSet& set,
                                                  const WitnessOptions& opt) {
    SpinMoments m = spin_moments(rho, set);
    const double var_sum = m.var_sx + m.var_sy;

    std::vector<TestRecord> out;
    {
        TestRecord r;
        r.name = "category1_form";
        r.value = var_sum - 0.5 * m.n;
        r.bound = 0.0;
        r.margin = -r.value;
        r.verdict = fire(r.margin, opt.epsilon, Verdict::entangled);
        out.push_back(std::move(r));
    }
    for (Steered s : {Steered::B, Steered::A}) {
        TestRecord r;
        r.name = "category2_form";
        r.steered = s;
        r.value = var_sum - 0.25 * m.n + (s == Steered::B ? 0.5 : -0.5) * m.sz;
        r.bound = 0.0;
        r.margin = -r.value;
        r.verdict = fire(r.margin, opt.epsilon, Verdict::steerable);
        out.push_back(std::move(r));
    }
    {
        TestRecord r;
        r.name = "category3_form";
        r.value = var_sum + 0.25;
        r.bound = 0.0;
        r.margin = -r.value;
        r.verdict = Verdict::inconclusive;  // never a test for Bell non-locality
        out.push_back(std::move(r));
    }
    return out;
}

WitnessReport evaluate_all(const DensityOperator& rho, const OperatorSet& set,
                           const WitnessOptions& opt) {
    WitnessReport rep;
    rep.records.push_back(bloch_vector_test(rho, set, opt));
    for (auto& r : spin_squeezing_test(rho, set, opt)) rep.records.push_back(std::move(r));
    try {
        rep.records.push_back(hz_test(rho, set, opt));
    } catch (const vacuous_test&) {
        TestRecord r;
        r.name = "hz";
        r.value = 0.0;
        r.bound = 0.0;
        r.margin = 0.0;
        r.extras["vacuous"] = 1.0;
        rep.records.push_back(std::move(r));
    }
    for (Steered s : {Steered::B, Steered::A})
        rep.records.push_back(generalized_hz_test(rho, set, s, opt));
    rep.records.push_back(quad_squeeze_test(rho, set, opt));
    for (auto& r : correlation_tests(rho, set, opt)) rep.records.push_back(std::move(r));
    for (auto& r : category_inequality_panel(rho, set, opt))
        rep.records.push_back(std::move(r));

    SsrFlags f = check_ssr(rho);
    rep.ssr_warning = !f.global_ok;

    rep.summary = Verdict::inconclusive;
    for (const auto& r : rep.records) {
        if (r.verdict == Verdict::steerable) {
            rep.summary = Verdict::steerable;
            break;
        }
        if (r.verdict == Verdict::entangled) rep.summary = Verdict::entangled;
    }
    return rep;
}

WitnessReport evaluate_all(const DensityOperator& rho, const WitnessOptions& opt) {
    OperatorSet set = build_operator_set(rho.basis());
    return evaluate_all(rho, set, opt);
}

}  // namespace steerkit
