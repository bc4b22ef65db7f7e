#ifndef STEERKIT_CERTIFY_HPP
#define STEERKIT_CERTIFY_HPP

#include <cstdint>
#include <string>

#include "steerkit/witness.hpp"

namespace steerkit {

enum class ExecPolicy { serial, parallel };

struct CertifySummary {
    std::string kind;
    int samples = 0;
    std::uint64_t seed = 0;
    int violations = 0;
    double min_slack = 0.0;
    double seconds = 0.0;
};

// Draws random separable SSR-compliant states and runs the full witness
// suite on each; counts any entangled/steerable verdict as a violation.
// min_slack is the smallest (-margin) seen over all test records.
CertifySummary mc_certify_cat1(int samples, std::uint64_t seed,
                               ExecPolicy policy = ExecPolicy::parallel,
                               const WitnessOptions& opt = {});

// Draws random Category-2 moment models and checks every derived bound.
CertifySummary mc_certify_cat2(int samples, std::uint64_t seed,
                               ExecPolicy policy = ExecPolicy::parallel,
                               const Cat2SampleRanges& ranges = {});

// Per-sample derived seed; keeps results independent of thread scheduling.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace steerkit

#endif
