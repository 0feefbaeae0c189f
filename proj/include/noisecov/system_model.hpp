#pragma once

#include <string>
#include <vector>

#include "noisecov/types.hpp"

namespace noisecov {

/// Discrete-time plant
///   x_{k+1} = A x_k + B d_k + G w_k
///   y_k     = C x_k + D d_k + v_k
/// with state dimension n, unknown-input dimension q (q = 0 allowed as a
/// no-unknown-input baseline), process-noise dimension g and output dimension p.
struct SystemMatrices {
    Matrix A;  // n x n
    Matrix B;  // n x q
    Matrix G;  // n x g
    Matrix C;  // p x n
    Matrix D;  // p x q

    Eigen::Index n() const { return A.rows(); }
    Eigen::Index q() const { return B.cols(); }
    Eigen::Index g() const { return G.cols(); }
    Eigen::Index p() const { return C.rows(); }

    /// Throws std::invalid_argument on any cross-dimension mismatch or non-finite entry.
    void require_well_formed() const;
};

struct NoiseCovariances {
    Matrix Q;  // g x g
    Matrix R;  // p x p
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool g_full_column_rank = false;
    bool c_full_column_rank = false;
    bool n_at_least_g = false;
    bool detectable = false;

    bool all_pass() const;
};

/// Checks the modelling assumptions: G and C of full column rank, n >= g and
/// (A, C) detectable (PBH test on every eigenvalue with magnitude >= 1).
/// Dimension mismatches are fatal and throw; assumption failures are reported.
ValidationReport validate(const SystemMatrices& system, const ToleranceConfig& tol = {});

bool is_symmetric(const Matrix& s, double tol);
bool is_psd(const Matrix& s, double psd_tol);

/// Throws std::invalid_argument unless Q and R are symmetric PSD with matching dimensions.
void require_valid_covariances(const NoiseCovariances& noises, const SystemMatrices& system,
                               const ToleranceConfig& tol = {});

}  // namespace noisecov
