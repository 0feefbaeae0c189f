#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace noisecov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultPsdTol = 1e-8;
inline constexpr double kDefaultZeroTol = 1e-8;

/// Numerical tolerances shared by the analysis chain.
struct ToleranceConfig {
    double rank_tol_rel = kDefaultRankTol;  // relative SVD cutoff for numerical rank
    double psd_tol = kDefaultPsdTol;        // eigenvalues below -psd_tol fail the PSD check
    double zero_tol = kDefaultZeroTol;      // max-magnitude threshold for structural zero tests

    void require_valid() const {
        if (!(rank_tol_rel > 0.0) || !(psd_tol > 0.0) || !(zero_tol > 0.0)) {
            throw std::invalid_argument("ToleranceConfig: all tolerances must be strictly positive");
        }
    }
};

// Raised when the left null space of H is trivial and no nonzero gain can be built.
struct NoGainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-file errors; the message carries the location of the offending entry.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace noisecov
