#include "noisecov/decoupling.hpp"

#include <sstream>

#include "noisecov/linalg.hpp"

namespace noisecov {

namespace {

bool is_zero_block(const Matrix& m, double zero_tol) {
    return m.size() == 0 || m.cwiseAbs().maxCoeff() <= zero_tol;
}

Matrix stacked_gain(const Matrix& basis, int r_requested) {
    const int r = static_cast<int>(basis.rows());
    if (r_requested <= r) {
        return basis.topRows(r_requested);
    }
    Matrix k(r_requested, basis.cols());
    k.topRows(r) = basis;
    for (int i = r; i < r_requested; ++i) {
        // extra rows are scaled copies of the basis rows, so K*H = 0 is preserved
        const int src = i % r;
        const double scale = static_cast<double>(i / r + 1);
        k.row(i) = scale * basis.row(src);
    }
    return k;
}

DecouplingGain make_gain(const ResidualModel& model, const Matrix& k) {
    DecouplingGain gain;
    gain.K = k;
    gain.r = static_cast<int>(k.rows());
    gain.K_M.resize(2 * gain.r, k.cols());
    gain.K_M.topRows(gain.r) = k;
    gain.K_M.bottomRows(gain.r) = k * model.CAM;
    return gain;
}

}  // namespace

const char* to_string(DecouplingCase c) {
    switch (c) {
        case DecouplingCase::CaseA: return "a";
        case DecouplingCase::CaseB: return "b";
        case DecouplingCase::CaseC: return "c";
        case DecouplingCase::CaseD: return "d";
    }
    return "?";
}

Matrix left_inverse(const Matrix& C) {
    Eigen::JacobiSVD<Matrix> svd(C);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(sv.size() - 1) > 0.0)) {
        throw std::invalid_argument("left_inverse: C is not of full column rank");
    }
    const double cond_ctc = (sv(0) / sv(sv.size() - 1)) * (sv(0) / sv(sv.size() - 1));
    if (cond_ctc > 1e12) {
        std::ostringstream os;
        os << "left_inverse: C^T C is ill-conditioned (condition number " << cond_ctc << ")";
        throw std::invalid_argument(os.str());
    }
    const Matrix ctc = C.transpose() * C;
    return ctc.ldlt().solve(C.transpose());
}

ResidualModel build_residual_model(const SystemMatrices& system, const ToleranceConfig& tol) {
    tol.require_valid();
    system.require_well_formed();
    if (numerical_rank(system.C, tol.rank_tol_rel) != system.n()) {
        throw std::invalid_argument("build_residual_model: C must be of full column rank");
    }

    ResidualModel model;
    model.M = left_inverse(system.C);
    const Matrix AM = system.A * model.M;
    model.CAM = system.C * AM;
    model.CG = system.C * system.G;

    const auto q = system.q();
    const Matrix state_block = system.C * (system.B - AM * system.D);
    model.H.resize(system.p(), 2 * q);
    model.H.leftCols(q) = state_block;
    model.H.rightCols(q) = system.D;

    const bool state_zero = is_zero_block(state_block, tol.zero_tol);
    const bool direct_zero = is_zero_block(system.D, tol.zero_tol);
    if (!state_zero && !direct_zero) {
        model.case_label = DecouplingCase::CaseA;
    } else if (!state_zero && direct_zero) {
        model.case_label = DecouplingCase::CaseB;
    } else if (state_zero && !direct_zero) {
        model.case_label = DecouplingCase::CaseC;
    } else {
        model.case_label = DecouplingCase::CaseD;
        model.unknown_input_vanishes = true;
    }
    return model;
}

ExistenceReport decoupling_exists(const ResidualModel& model, const SystemMatrices& system,
                                  const ToleranceConfig& tol) {
    ExistenceReport report;
    report.case_label = model.case_label;
    report.rank_H = numerical_rank(model.H, tol.rank_tol_rel);
    report.left_null_dimension = static_cast<int>(system.p()) - report.rank_H;

    const auto q = system.q();
    switch (model.case_label) {
        case DecouplingCase::CaseA: {
            report.condition_holds = (report.rank_H == 2 * q);
            CaseAConditions sub;
            sub.rank_b_minus_amd =
                numerical_rank(system.B - system.A * model.M * system.D, tol.rank_tol_rel);
            sub.rank_d = numerical_rank(system.D, tol.rank_tol_rel);
            sub.n_at_least_q = (system.n() >= q);
            sub.p_at_least_2q = (system.p() >= 2 * q);
            report.case_a = sub;
            break;
        }
        case DecouplingCase::CaseB:
            report.condition_holds = (numerical_rank(system.B, tol.rank_tol_rel) == q);
            break;
        case DecouplingCase::CaseC:
            report.condition_holds =
                is_zero_block(system.B - system.A * model.M * system.D, tol.zero_tol) &&
                (numerical_rank(system.D, tol.rank_tol_rel) == q);
            break;
        case DecouplingCase::CaseD:
            report.condition_holds = true;
            break;
    }
    report.gain_exists = report.condition_holds && report.left_null_dimension >= 1;
    return report;
}

DecouplingGain decoupling_gain(const ResidualModel& model, const ToleranceConfig& tol,
                               std::optional<int> r_requested) {
    const auto p = model.CAM.rows();
    Matrix basis;
    if (model.case_label == DecouplingCase::CaseD) {
        basis = Matrix::Identity(p, p);
    } else {
        basis = left_null_space(model.H, tol.rank_tol_rel);
        if (basis.rows() == 0) {
            throw NoGainError("decoupling_gain: the left null space of H is trivial; only K = 0 satisfies K*H = 0");
        }
    }
    if (r_requested) {
        if (*r_requested < 1) {
            throw std::invalid_argument("decoupling_gain: r_requested must be positive");
        }
        basis = stacked_gain(basis, *r_requested);
    }
    return make_gain(model, basis);
}

DecouplingGain set_user_gain(const ResidualModel& model, const Matrix& K_user,
                             const ToleranceConfig& tol) {
    if (K_user.cols() != model.CAM.rows()) {
        throw std::invalid_argument("set_user_gain: K must have p columns");
    }
    if (K_user.rows() < 1 || K_user.cwiseAbs().maxCoeff() <= tol.zero_tol) {
        throw std::invalid_argument("set_user_gain: K must be nonzero");
    }
    const Matrix kh = K_user * model.H;
    if (kh.size() > 0) {
        const double h_scale = std::max(1.0, model.H.cwiseAbs().maxCoeff());
        Eigen::Index max_row = 0;
        Eigen::Index max_col = 0;
        const double worst = kh.cwiseAbs().maxCoeff(&max_row, &max_col);
        if (worst > tol.zero_tol * h_scale) {
            std::ostringstream os;
            os << "set_user_gain: K does not satisfy K*H = 0; |K*H|(" << max_row << "," << max_col
               << ") = " << worst;
            throw std::invalid_argument(os.str());
        }
    }
    return make_gain(model, K_user);
}

}  // namespace noisecov
