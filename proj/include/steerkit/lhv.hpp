#ifndef STEERKIT_LHV_HPP
#define STEERKIT_LHV_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "steerkit/measurement.hpp"
#include "steerkit/states.hpp"

namespace steerkit {

// Finite-lambda local hidden variable model: outcome distributions for a
// named set of observables on each side, conditionally independent given
// lambda.
struct DiscreteLhvModel {
    struct OutcomeDist {
        std::vector<double> outcomes;
        std::vector<double> probs;  // same length, sums to 1
    };
    struct Lambda {
        double weight;
        std::map<std::string, OutcomeDist> side_a;
        std::map<std::string, OutcomeDist> side_b;
    };
    std::vector<Lambda> lambdas;

    void validate() const;  // throws invalid_argument
};

// P(alpha, beta) = sum_lambda P(lambda) P(alpha|lambda) P(beta|lambda).
// Outcome values are merged across lambdas with absolute tolerance 1e-9.
ProbTable lhv_joint_probability(const DiscreteLhvModel& model,
                                const std::string& obs_a, const std::string& obs_b);

struct NoSignalingResult {
    bool passes;
    double max_deviation;
};

// Largest change of either marginal under a change of the other side's
// observable, over all observable pairs in the model.
NoSignalingResult no_signaling_check(const DiscreteLhvModel& model,
                                     double tol = 1e-10);

// Category-1 model: lambda ranges over the separable terms, outcome
// distributions from the Born rule on each factor. Observables are
// subsystem-local Hermitian matrices keyed by name.
DiscreteLhvModel cat1_model_from_separable(
    const SeparableSpec& spec,
    const std::vector<std::pair<std::string, Matrix>>& obs_a,
    const std::vector<std::pair<std::string, Matrix>>& obs_b);

enum class Steered { B, A };

// Category-2 model: classical A-side moments per lambda plus a local hidden
// quantum state for B (number-diagonal single-mode density operator).
struct Cat2MomentModel {
    struct Lambda {
        double weight;
        double x_a, p_a;    // first moments
        double x2_a, p2_a;  // second moments, >= square of first
        double u_a, v_a;
        DensityOperator rho_b;  // single-mode, number-diagonal

        double n_a() const { return 0.5 * (x2_a + p2_a) - v_a; }
    };
    std::vector<Lambda> lambdas;
    Steered steered = Steered::B;

    void validate() const;  // throws invalid_argument
};

// Ensemble moments predicted by the model. Variance entries are the model's
// lower bounds on the spin variances, not exact variances.
struct Cat2Moments {
    double mean_sx, mean_sy;        // always 0
    double mean_sz, mean_n;
    double mean_n_a, mean_n_b;
    double mean_na_nb;              // sum_l P N_A(l) <N_B(l)>
    double var_sx_lb, var_sy_lb;    // lower bounds
    double quad_var;                // two-mode quadrature variance, any theta/sign
    double corr_lhs;                // |<a^dag b>|^2 under the model (0)
};

Cat2Moments cat2_predicted_moments(const Cat2MomentModel& model);

struct BoundReport {
    struct Entry {
        std::string name;
        double lhs;
        double rhs;
        double slack;  // lhs - rhs; holds iff slack >= -1e-9
        bool holds;
    };
    std::vector<Entry> entries;

    bool all_hold() const;
    double min_slack() const;
};

// Every derived Category-2 inequality, each as lhs >= rhs with slack.
BoundReport verify_cat2_bounds(const Cat2MomentModel& model);

struct Cat2SampleRanges {
    double max_first_moment = 1.0;   // |<x_A>|, |<p_A>| window
    double max_second_slack = 2.0;   // <x^2> - <x>^2 window
    double u_min = -5.0, u_max = 5.0;
    // The derived bound chain requires the quantum value <V_A> = 1/2 per
    // lambda; widening this window produces models outside the certified
    // family.
    double v_min = 0.5, v_max = 0.5;
    double max_n_a = 4.0;
    int b_n_max = 4;
};

Cat2MomentModel sample_cat2_model(std::uint64_t seed, int n_lambda,
                                  const Cat2SampleRanges& ranges = {});

// sum_l p(alpha|l) rho_B(l) P(l) / sum_l p(alpha|l) P(l). Throws
// conditioning_on_null_event when the denominator vanishes.
DensityOperator lhs_conditional_state(const Cat2MomentModel& model,
                                      const std::vector<double>& p_alpha_given_lambda);

}  // namespace steerkit

#endif
