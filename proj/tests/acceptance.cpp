// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here and nowhere else.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "steerkit/certify.hpp"
#include "steerkit/measurement.hpp"
#include "steerkit/specfile.hpp"

using namespace steerkit;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", index, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double guarded_defect(const BipartiteBasis& basis, const Matrix& lhs,
                      const Matrix& rhs) {
    Matrix g = guard_projector(basis);
    return (g * (lhs - rhs) * g).cwiseAbs().maxCoeff();
}

double run_seconds(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: operator identity suite on fock(8,8) --------------------

void criterion_1() {
    double worst = 0.0;
    double secs = run_seconds([&] {
        BipartiteBasis basis = BipartiteBasis::fock(8, 8);
        OperatorSet s = build_operator_set(basis);
        const Complex i(0.0, 1.0);
        Matrix id = identity(basis);
        auto defect = [&](const Matrix& a, const Matrix& b) {
            worst = std::max(worst, guarded_defect(basis, a, b));
        };

        // spin operators in quadrature form
        defect(s.sx, 0.5 * (s.x_a * s.x_b + s.p_a * s.p_b));
        defect(s.sy, 0.5 * (s.p_a * s.x_b - s.x_a * s.p_b));
        defect(s.sz, 0.25 * (s.x_b * s.x_b + s.p_b * s.p_b - s.x_a * s.x_a -
                             s.p_a * s.p_a));
        // mode numbers from quadratures
        defect(s.n_a, 0.5 * (s.x_a * s.x_a + s.p_a * s.p_a) - 0.5 * id);
        defect(s.n_b, 0.5 * (s.x_b * s.x_b + s.p_b * s.p_b) - 0.5 * id);
        // spin squares via quadrature/auxiliary products
        defect(s.sx2, 0.25 * (s.x_a * s.x_a * s.x_b * s.x_b +
                              s.p_a * s.p_a * s.p_b * s.p_b +
                              2.0 * s.u_a * s.u_b - 2.0 * s.v_a * s.v_b));
        defect(s.sy2, 0.25 * (s.p_a * s.p_a * s.x_b * s.x_b +
                              s.x_a * s.x_a * s.p_b * s.p_b -
                              2.0 * s.u_a * s.u_b - 2.0 * s.v_a * s.v_b));
        // canonical commutators
        defect(s.x_a * s.p_a - s.p_a * s.x_a, i * id);
        defect(s.x_b * s.p_b - s.p_b * s.x_b, i * id);

        // two-mode quadrature square and commutator at several angles
        for (double theta : {0.0, 0.3, 1.1}) {
            for (int sign : {+1, -1}) {
                auto [x, p] = two_mode_quadrature(s, theta, sign);
                auto [xo, po] = two_mode_quadrature(s, theta, -sign);
                const double sg = double(sign);
                const Complex e2m = std::exp(-2.0 * i * theta);
                const Complex e2p = std::exp(2.0 * i * theta);
                Matrix sq =
                    0.25 * (e2m * s.a * s.a + e2p * s.adag * s.adag +
                            e2p * s.b * s.b + e2m * s.bdag * s.bdag + 2.0 * s.n +
                            2.0 * id +
                            2.0 * sg * (s.a * s.b + s.adag * s.bdag +
                                        e2m * s.a * s.bdag + e2p * s.adag * s.b));
                defect(x * x, sq);
                // same-sign EPR pair commutes; opposite-sign P restores i
                defect(x * p - p * x, Matrix::Zero(x.rows(), x.cols()));
                defect(x * po - po * x, i * id);
                (void)xo;
            }
        }

        // Casimir identity on fixed total boson number
        Matrix proj = total_n_projector(basis, 8);
        Matrix lhs = s.sx2 + s.sy2 + s.sz2;
        Matrix rhs = (s.n / 2.0) * (s.n / 2.0 + id);
        worst = std::max(worst, (proj * (lhs - rhs) * proj).cwiseAbs().maxCoeff());
    });
    report(1, "operator identity suite", worst <= 1e-10 && secs < 5.0,
           "max defect " + fmt_float(worst) + ", " + fmt_float(secs) + " s");
}

// ---- criterion 2: Werner classification table ------------------------------

void criterion_2() {
    bool ok = true;
    for (int d : {2, 3, 4, 5}) {
        ok = ok && werner_classify(d, 1.0 / (d + 1.0)) == Category::boundary;
        ok = ok && werner_classify(d, 1.0 - 1.0 / d) == Category::boundary;
        ok = ok &&
             werner_classify(d, 1.0 / (d + 1.0) - 1e-6) == Category::cat1_separable;
        ok = ok && werner_classify(d, 1.0 / (d + 1.0) + 1e-6) ==
                       Category::cat2_lhs_entangled;
        const Category above = werner_classify(d, 1.0 - 1.0 / d + 1e-6);
        ok = ok && above == (d >= 3 ? Category::cat3_steerable
                                    : Category::cat3_or_4_steerable);
    }
    ok = ok && werner_classify(2, 0.25) == Category::cat1_separable;
    ok = ok && werner_classify(2, 0.45) == Category::cat2_lhs_entangled;
    ok = ok && werner_classify(3, 0.9) == Category::cat3_steerable;
    report(2, "Werner classification table", ok, "");
}

// ---- criterion 3: conditional-state machinery ------------------------------

void criterion_3() {
    double worst_rec = 0.0, worst_bayes = 0.0;
    double secs = run_seconds([&] {
        BipartiteBasis basis = BipartiteBasis::fock(3, 3);
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 100; ++trial) {
            DensityOperator rho = random_ssr_state(basis, 40000 + trial, 1);
            Matrix oa = oracle::random_hermitian(4, rng);
            Matrix ob = oracle::random_hermitian(4, rng);
            SpectralDecomposition da = spectral_decompose(oa);
            ProbTable t = joint_probability_table(rho, oa, ob);

            Matrix rec = Matrix::Zero(4, 4);
            for (size_t k = 0; k < da.outcomes.size(); ++k) {
                double p = real_expectation(lift_a(basis, da.outcomes[k].projector), rho);
                if (p <= 1e-14) continue;
                ConditionalState c = conditional_state(rho, oa, int(k));
                rec += p * reduce(c.state, Subsystem::B).mat();
                ProbTable tc = joint_probability_table(c.state, oa, ob);
                for (size_t j = 0; j < t.outcomes_b.size(); ++j)
                    worst_bayes = std::max(
                        worst_bayes,
                        std::abs(t.joint(Eigen::Index(k), Eigen::Index(j)) -
                                 p * tc.joint(Eigen::Index(k), Eigen::Index(j))));
            }
            worst_rec = std::max(
                worst_rec,
                (rec - reduce(rho, Subsystem::B).mat()).cwiseAbs().maxCoeff());
        }
    });
    report(3, "conditional-state machinery",
           worst_rec <= 1e-12 && worst_bayes <= 1e-10 && secs < 10.0,
           "reconstruction " + fmt_float(worst_rec) + ", Bayes " +
               fmt_float(worst_bayes) + ", " + fmt_float(secs) + " s");
}

// ---- criteria 4/7: Category-1 soundness + equivalence signs ----------------

int sign_of(double margin) {
    if (margin > 1e-9) return 1;
    if (margin < -1e-9) return -1;
    return 0;
}

struct SuiteScan {
    int firings = 0;
    int mismatches = 0;
};

SuiteScan scan_state(const WitnessReport& rep) {
    SuiteScan s;
    const TestRecord *bloch = nullptr, *weak = nullptr;
    const TestRecord *ghz_b = nullptr, *ghz_a = nullptr, *sc_b = nullptr,
                     *sc_a = nullptr;
    for (const auto& r : rep.records) {
        if (r.name != "category3_form" && r.verdict != Verdict::inconclusive)
            ++s.firings;
        if (r.name == "bloch_vector") bloch = &r;
        if (r.name == "weak_correlation") weak = &r;
        if (r.name == "generalized_hz")
            (r.steered == Steered::B ? ghz_b : ghz_a) = &r;
        if (r.name == "strong_correlation_steer")
            (r.steered == Steered::B ? sc_b : sc_a) = &r;
    }
    if (sign_of(sc_b->margin) != sign_of(ghz_b->margin)) ++s.mismatches;
    if (sign_of(sc_a->margin) != sign_of(ghz_a->margin)) ++s.mismatches;
    if (sign_of(weak->margin) != sign_of(bloch->margin)) ++s.mismatches;
    return s;
}

void criteria_4_and_7() {
    const int samples = 10000;
    CertifySummary c1{};
    int firings = 0, mismatches = 0;
    double secs = run_seconds([&] {
        c1 = mc_certify_cat1(samples, 7, ExecPolicy::parallel);

        // independent pass over the same family for the equivalence signs
        BipartiteBasis basis = BipartiteBasis::fock(4, 4);
        OperatorSet set = build_operator_set(basis);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : firings, mismatches)
        for (int i = 0; i < samples; ++i) {
            const std::uint64_t s = mix_seed(7, std::uint64_t(i));
            SeparableSample sample =
                random_separable_ssr_state(basis, s, 1 + int(s % 5));
            SuiteScan scan = scan_state(evaluate_all(sample.state, set));
            firings += scan.firings;
            mismatches += scan.mismatches;
        }

        // demo states join the equivalence scan
        std::vector<DensityOperator> demos;
        demos.push_back(pure_state(basis, {{0, 1, 1.0}, {1, 0, 1.0}}));
        demos.push_back(
            pure_state(basis, {{1, 0, std::sqrt(3.0) / 2.0}, {0, 1, 0.5}}));
        BipartiteBasis big = BipartiteBasis::fock(20, 20);
        WitnessOptions small_grid;
        small_grid.theta_points = 8;
        for (const auto& d : demos)
            mismatches += scan_state(evaluate_all(d, set)).mismatches;
        mismatches +=
            scan_state(evaluate_all(two_mode_squeezed_vacuum(big, 0.5), small_grid))
                .mismatches;
    });
    report(4, "Category-1 soundness (10^4 separable samples)",
           c1.violations == 0 && firings == 0 && secs < 120.0,
           "violations " + std::to_string(c1.violations) + ", firings " +
               std::to_string(firings) + ", " + fmt_float(secs) + " s");
    report(7, "equivalence properties (strong-corr vs gen-HZ, weak vs Bloch)",
           mismatches == 0, "mismatches " + std::to_string(mismatches));
}

// ---- criterion 5: Category-2 soundness --------------------------------------

void criterion_5() {
    CertifySummary c2{};
    bool names_ok = false;
    double secs = run_seconds([&] {
        c2 = mc_certify_cat2(10000, 7, ExecPolicy::parallel);
        BoundReport r = verify_cat2_bounds(sample_cat2_model(7, 4));
        bool chain = false, quad_ge = false, quad_le = false, strong = false;
        for (const auto& e : r.entries) {
            chain = chain || e.name == "gen_hz_vs_chain";
            quad_ge = quad_ge || e.name == "quad_var_ge";
            quad_le = quad_le || e.name == "quad_var_le";
            strong = strong || e.name == "strong_corr_steering";
        }
        names_ok = chain && quad_ge && quad_le && strong;
    });
    report(5, "Category-2 soundness (10^4 moment models)",
           c2.violations == 0 && c2.min_slack >= -1e-9 && names_ok && secs < 120.0,
           "violations " + std::to_string(c2.violations) + ", min slack " +
               fmt_float(c2.min_slack) + ", " + fmt_float(secs) + " s");
}

// ---- criterion 6: violation demonstrations ----------------------------------

void criterion_6() {
    bool ok = true;
    std::string detail;
    BipartiteBasis basis = BipartiteBasis::fock(3, 3);
    OperatorSet set = build_operator_set(basis);

    DensityOperator sym = pure_state(basis, {{0, 1, 1.0}, {1, 0, 1.0}});
    const double sx = real_expectation(set.sx, sym);
    TestRecord hz = hz_test(sym, set);
    ok = ok && std::abs(sx - 0.5) <= 1e-10 && std::abs(hz.value + 0.25) <= 1e-10;
    ok = ok && bloch_vector_test(sym, set).verdict == Verdict::steerable;
    ok = ok && hz.verdict == Verdict::steerable;

    DensityOperator asym =
        pure_state(basis, {{1, 0, std::sqrt(3.0) / 2.0}, {0, 1, 0.5}});
    TestRecord ghz = generalized_hz_test(asym, set, Steered::B);
    ok = ok && std::abs(ghz.value + 0.0625) <= 1e-10;
    ok = ok && std::abs(ghz.extras.at("e_hz") - 0.625) <= 1e-10;
    ok = ok && std::abs(ghz.extras.at("ratio_bound") - 0.75) <= 1e-10;
    ok = ok && ghz.extras.at("e_hz") < ghz.extras.at("ratio_bound");
    bool strong_ok = false;
    for (const auto& r : correlation_tests(asym, set))
        if (r.name == "strong_correlation_steer" && r.steered == Steered::B)
            strong_ok = std::abs(r.value - 0.1875) <= 1e-10 &&
                        std::abs(r.bound - 0.125) <= 1e-10 &&
                        r.verdict == Verdict::steerable;
    ok = ok && strong_ok;

    BipartiteBasis big = BipartiteBasis::fock(20, 20);
    DensityOperator tmsv = two_mode_squeezed_vacuum(big, 0.5);
    ok = ok && tmsv.ssr_status() == SsrStatus::noncompliant;
    WitnessOptions small_grid;
    small_grid.theta_points = 8;
    TestRecord quad = quad_squeeze_test(tmsv, build_operator_set(big), small_grid);
    const double target = std::exp(-1.0) / 2.0;
    ok = ok && std::abs(quad.value - target) <= 1e-4 && quad.value < 0.5;
    ok = ok && quad.verdict == Verdict::steerable;

    report(6, "violation demonstrations", ok,
           "gen-HZ " + fmt_float(ghz.value) + ", TMSV quad " + fmt_float(quad.value));
}

// ---- criterion 8: HVT statistical inequalities ------------------------------

void criterion_8() {
    std::mt19937_64 rng(88);
    std::gamma_distribution<double> g(1.0, 1.0);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> upos(0.0, 5.0);
    double worst = 0.0;

    // HVT variance inequality over random finite-outcome distributions
    for (int trial = 0; trial < 1000; ++trial) {
        const int n_lambda = 2 + int(rng() % 6);
        std::vector<double> w(static_cast<size_t>(n_lambda));
        double wsum = 0.0;
        for (auto& x : w) x = g(rng), wsum += x;
        double mix_m1 = 0.0, mix_m2 = 0.0, sum_var = 0.0;
        for (int l = 0; l < n_lambda; ++l) {
            const double p = w[size_t(l)] / wsum;
            double norm = 0.0, m1 = 0.0, m2 = 0.0;
            double outs[3], probs[3];
            for (int k = 0; k < 3; ++k) outs[k] = u(rng), probs[k] = g(rng),
                                        norm += probs[k];
            for (int k = 0; k < 3; ++k) {
                probs[k] /= norm;
                m1 += probs[k] * outs[k];
                m2 += probs[k] * outs[k] * outs[k];
            }
            mix_m1 += p * m1;
            mix_m2 += p * m2;
            sum_var += p * (m2 - m1 * m1);
        }
        worst = std::min(worst, (mix_m2 - mix_m1 * mix_m1) - sum_var);
    }

    // quantum mixed-state variance concavity
    BipartiteBasis basis = BipartiteBasis::fock(4, 4);
    OperatorSet set = build_operator_set(basis);
    std::uniform_real_distribution<double> uw(0.05, 0.95);
    for (int trial = 0; trial < 1000; ++trial) {
        const double w1 = uw(rng), w2 = 1.0 - w1;
        DensityOperator r1 = random_ssr_state(basis, 90000 + 2 * trial, 2);
        DensityOperator r2 = random_ssr_state(basis, 90001 + 2 * trial, 2);
        DensityOperator mix = mixture({{w1, r1}, {w2, r2}});
        const Matrix& op = (trial % 2) ? set.sx : set.n;
        worst = std::min(worst, variance(op, mix) -
                                    (w1 * variance(op, r1) + w2 * variance(op, r2)));
    }

    // Cauchy inequality
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + int(rng() % 8);
        double wsum = 0.0;
        std::vector<double> p(static_cast<size_t>(n)), c(static_cast<size_t>(n));
        for (auto& x : p) x = g(rng), wsum += x;
        double mean_c = 0.0, mean_sqrt = 0.0;
        for (int i = 0; i < n; ++i) {
            p[size_t(i)] /= wsum;
            c[size_t(i)] = upos(rng);
            mean_c += p[size_t(i)] * c[size_t(i)];
            mean_sqrt += p[size_t(i)] * std::sqrt(c[size_t(i)]);
        }
        worst = std::min(worst, mean_c - mean_sqrt * mean_sqrt);
    }

    report(8, "HVT statistical inequalities", worst >= -1e-10,
           "min slack " + fmt_float(worst));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_and_7();
    criterion_5();
    criterion_6();
    criterion_8();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
