#ifndef STEERKIT_WITNESS_HPP
#define STEERKIT_WITNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steerkit/fock.hpp"
#include "steerkit/lhv.hpp"

namespace steerkit {

enum class Verdict { inconclusive, entangled, steerable };

const char* verdict_name(Verdict v);

// One test outcome. Margins are oriented so that margin > epsilon fires the
// test regardless of whether the underlying inequality is "above bound" or
// "below bound".
struct TestRecord {
    std::string name;
    double value;
    double bound;
    double margin;
    Verdict verdict = Verdict::inconclusive;
    std::optional<Steered> steered;
    std::map<std::string, double> extras;
};

struct WitnessOptions {
    double epsilon = 1e-9;
    int theta_points = 64;
};

struct WitnessReport {
    std::vector<TestRecord> records;
    bool ssr_warning = false;
    Verdict summary = Verdict::inconclusive;
};

// value = max(|<S_x>|, |<S_y>|); any nonzero value rules out an LHS for
// either subsystem.
TestRecord bloch_vector_test(const DensityOperator& rho, const OperatorSet& set,
                             const WitnessOptions& opt = {});

// One record per cyclic triple (alpha, beta, gamma): squeezed alpha with
// anti-squeezed beta relative to |<S_gamma>|/2.
std::vector<TestRecord> spin_squeezing_test(const DensityOperator& rho,
                                            const OperatorSet& set,
                                            const WitnessOptions& opt = {});

// Var(S_x) + Var(S_y) - <N>/2 < 0. Throws vacuous_test when <N> <= epsilon.
TestRecord hz_test(const DensityOperator& rho, const OperatorSet& set,
                   const WitnessOptions& opt = {});

// Var(S_x) + Var(S_y) - <N>/4 +/- <S_z>/2 < 0 (+ for steered B).
TestRecord generalized_hz_test(const DensityOperator& rho, const OperatorSet& set,
                               Steered steered, const WitnessOptions& opt = {});

// Minimum of Var(X_theta(s)), Var(P_theta(s)) over the theta grid and both
// signs; below 1/2 rules out an LHS.
TestRecord quad_squeeze_test(const DensityOperator& rho, const OperatorSet& set,
                             const WitnessOptions& opt = {});

// Weak (|<a^dag b>|^2 > 0), strong entanglement (> <N_A N_B>) and strong
// steering (> <N_A N_B> + <N_B>/2, swapped for steered A) tests.
std::vector<TestRecord> correlation_tests(const DensityOperator& rho,
                                          const OperatorSet& set,
                                          const WitnessOptions& opt = {});

// Category-1/2/3 left-hand quantities; the Category-3 form is reported but
// never yields a verdict.
std::vector<TestRecord> category_inequality_panel(const DensityOperator& rho,
                                                  const OperatorSet& set,
                                                  const WitnessOptions& opt = {});

WitnessReport evaluate_all(const DensityOperator& rho, const OperatorSet& set,
                           const WitnessOptions& opt = {});
WitnessReport evaluate_all(const DensityOperator& rho, const WitnessOptions& opt = {});

}  // namespace steerkit

#endif
