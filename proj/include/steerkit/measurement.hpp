#ifndef STEERKIT_MEASUREMENT_HPP
#define STEERKIT_MEASUREMENT_HPP

#include <vector>

#include "steerkit/dense.hpp"

namespace steerkit {

enum class Subsystem { A, B };

// Grouped eigenvalues and orthogonal projectors of a Hermitian observable,
// outcomes in ascending eigenvalue order.
struct SpectralDecomposition {
    struct Outcome {
        double value;
        Matrix projector;
        int multiplicity;
    };
    std::vector<Outcome> outcomes;
};

// group_tol is relative to the spectral range; eigenvalues closer than that
// share one (degenerate) projector.
SpectralDecomposition spectral_decompose(const Matrix& observable,
                                         double group_tol = 1e-8);

// Joint outcome probabilities for commuting subsystem-local observables.
struct ProbTable {
    std::vector<double> outcomes_a;
    std::vector<double> outcomes_b;
    Eigen::MatrixXd joint;  // rows: alpha, cols: beta

    Eigen::VectorXd marginal_a() const { return joint.rowwise().sum(); }
    Eigen::VectorXd marginal_b() const { return joint.colwise().sum().transpose(); }
    double mean_a() const;
    double mean_b() const;
    double mean_product() const;  // sum alpha beta P(alpha, beta)
    double total() const { return joint.sum(); }
};

// obs_a and obs_b are subsystem-local Hermitian matrices (dim_a x dim_a and
// dim_b x dim_b); they are lifted internally.
ProbTable joint_probability_table(const DensityOperator& rho, const Matrix& obs_a,
                                  const Matrix& obs_b);

// Partial trace onto the kept subsystem, returned on a single-mode (fock) or
// d x 1 (qudit) basis.
DensityOperator reduce(const DensityOperator& rho, Subsystem keep);

struct ConditionalState {
    DensityOperator state;  // joint-space post-measurement state
    double probability;
    double outcome;
};

// Projective update after measuring obs_a (subsystem-local, lifted
// internally) on A with the given outcome index (ascending eigenvalue
// order). Throws conditioning_on_null_event if the outcome probability
// is below 1e-14.
ConditionalState conditional_state(const DensityOperator& rho, const Matrix& obs_a,
                                   int outcome_index);

}  // namespace steerkit

#endif
