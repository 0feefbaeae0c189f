#pragma once

#include <optional>

#include "noisecov/system_model.hpp"

namespace noisecov {

/// Sign pattern of (C(B - A*M*D), D):
///   CaseA: both nonzero,  CaseB: D = 0 and C*B != 0,
///   CaseC: C(B - A*M*D) = 0 and D != 0,  CaseD: both zero (the unknown input vanishes).
enum class DecouplingCase { CaseA, CaseB, CaseC, CaseD };

const char* to_string(DecouplingCase c);

/// The one-step measurement-difference model: with M a left inverse of C,
/// y_{k+1} - CAM y_k depends on the unknown input only through H = [C(B - A*M*D), D].
struct ResidualModel {
    Matrix M;    // n x p, M*C = I_n
    Matrix H;    // p x 2q
    Matrix CAM;  // p x p
    Matrix CG;   // p x g
    DecouplingCase case_label = DecouplingCase::CaseA;
    bool unknown_input_vanishes = false;  // CaseD (includes q = 0 baselines)

    Eigen::Index q() const { return H.cols() / 2; }
    Matrix state_block() const { return H.leftCols(q()); }   // C(B - A*M*D)
    Matrix direct_block() const { return H.rightCols(q()); }  // D
};

/// (C^T C)^{-1} C^T for C of full column rank. Throws when C^T C is
/// ill-conditioned (condition number above 1e12).
Matrix left_inverse(const Matrix& C);

ResidualModel build_residual_model(const SystemMatrices& system, const ToleranceConfig& tol = {});

struct CaseAConditions {
    int rank_b_minus_amd = 0;  // must equal q
    int rank_d = 0;            // must equal q
    bool n_at_least_q = false;
    bool p_at_least_2q = false;
};

struct ExistenceReport {
    DecouplingCase case_label = DecouplingCase::CaseA;
    bool condition_holds = false;     // the per-case solvability criterion
    int rank_H = 0;
    int left_null_dimension = 0;      // p - rank(H); a nonzero gain needs >= 1
    bool gain_exists = false;         // condition_holds and left_null_dimension >= 1
    std::optional<CaseAConditions> case_a;  // necessary sub-conditions, CaseA only
};

/// Decides whether a nonzero K with K*H = 0 exists.
/// CaseA: rank(H) = 2q; CaseB: rank(B) = q; CaseC: B - A*M*D = 0 and rank(D) = q;
/// CaseD: trivially satisfiable (K = I_p).
ExistenceReport decoupling_exists(const ResidualModel& model, const SystemMatrices& system,
                                  const ToleranceConfig& tol = {});

struct DecouplingGain {
    Matrix K;    // r x p, K*H = 0
    int r = 0;
    Matrix K_M;  // 2r x p, [K; K*CAM]
};

/// Default gain: orthonormal basis of the left null space of H (r = p - rank(H));
/// identity for CaseD. Requesting more rows repeats scaled copies of the basis,
/// requesting fewer keeps the leading rows. Throws NoGainError when the left
/// null space is trivial.
DecouplingGain decoupling_gain(const ResidualModel& model, const ToleranceConfig& tol = {},
                               std::optional<int> r_requested = std::nullopt);

/// Wraps a caller-supplied gain after checking K != 0 and K*H = 0 (within
/// zero_tol relative to the largest entry of H). Row-rank-deficient gains are
/// accepted unchanged.
DecouplingGain set_user_gain(const ResidualModel& model, const Matrix& K_user,
                             const ToleranceConfig& tol = {});

}  // namespace noisecov
