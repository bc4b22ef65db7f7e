#include "steerkit/certify.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steerkit {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step over seed ^ golden-ratio-scrambled index
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
CertifySummary run_batch(const char* kind, int samples, std::uint64_t seed,
                         ExecPolicy policy, Fn&& sample_slack) {
    if (samples < 1)
        throw std::invalid_argument("mc_certify: samples must be >= 1");
    const auto t0 = Clock::now();
    int violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();

    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : violations) \
    reduction(min : min_slack)
        for (int i = 0; i < samples; ++i) {
            const double s = sample_slack(mix_seed(seed, std::uint64_t(i)));
            if (s < -kMarginEps) ++violations;
            min_slack = std::min(min_slack, s);
        }
    } else {
        for (int i = 0; i < samples; ++i) {
            const double s = sample_slack(mix_seed(seed, std::uint64_t(i)));
            if (s < -kMarginEps) ++violations;
            min_slack = std::min(min_slack, s);
        }
    }

    CertifySummary out;
    out.kind = kind;
    out.samples = samples;
    out.seed = seed;
    out.violations = violations;
    out.min_slack = min_slack;
    out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
}

}  // namespace

CertifySummary mc_certify_cat1(int samples, std::uint64_t seed, ExecPolicy policy,
                               const WitnessOptions& opt) {
    const BipartiteBasis basis = BipartiteBasis::fock(4, 4);
    const OperatorSet set = build_operator_set(basis);
    auto slack_of = [&](std::uint64_t s) {
        const int n_terms = 1 + int(s % 5);
        SeparableSample sample = random_separable_ssr_state(basis, s, n_terms);
        WitnessReport rep = evaluate_all(sample.state, set, opt);
        // a separable state must leave every test unfired; the slack is the
        // distance of the most dangerous margin from the firing threshold
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& r : rep.records) {
            if (r.name == "category3_form") continue;  // never a verdict
            worst = std::min(worst, -r.margin);
        }
        return worst;
    };
    return run_batch("cat1", samples, seed, policy, slack_of);
}

CertifySummary mc_certify_cat2(int samples, std::uint64_t seed, ExecPolicy policy,
                               const Cat2SampleRanges& ranges) {
    auto slack_of = [&](std::uint64_t s) {
        const int n_lambda = 1 + int(s % 8);
        Cat2MomentModel model = sample_cat2_model(s, n_lambda, ranges);
        return verify_cat2_bounds(model).min_slack();
    };
    return run_batch("cat2", samples, seed, policy, slack_of);
}

}  // namespace steerkit
