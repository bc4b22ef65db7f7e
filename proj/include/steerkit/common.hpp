#ifndef STEERKIT_COMMON_HPP
#define STEERKIT_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace steerkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance for complex scalar / matrix entry equality.
inline constexpr double kTol = 1e-12;
// Eigenvalues of a density operator may dip this far below zero.
inline constexpr double kPsdTol = 1e-10;
// Witness firing threshold: strict inequalities fire only beyond this margin.
inline constexpr double kMarginEps = 1e-9;

struct unsupported_basis : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct conditioning_on_null_event : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct truncation_too_small : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct vacuous_test : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Largest entrywise deviation of M from its adjoint.
inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace steerkit

#endif
