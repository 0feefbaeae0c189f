#include "noisecov/system_model.hpp"

#include <cmath>
#include <sstream>

#include "noisecov/linalg.hpp"

namespace noisecov {

namespace {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

std::string dim_string(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

}  // namespace

void SystemMatrices::require_well_formed() const {
    const Eigen::Index nn = A.rows();
    if (A.cols() != nn) {
        throw std::invalid_argument("SystemMatrices: A must be square, got " + dim_string(A));
    }
    if (nn < 1) {
        throw std::invalid_argument("SystemMatrices: state dimension must be positive");
    }
    if (B.rows() != nn) {
        throw std::invalid_argument("SystemMatrices: B must have n rows, got " + dim_string(B));
    }
    if (G.rows() != nn || G.cols() < 1) {
        throw std::invalid_argument("SystemMatrices: G must be n x g with g >= 1, got " + dim_string(G));
    }
    if (C.cols() != nn || C.rows() < 1) {
        throw std::invalid_argument("SystemMatrices: C must be p x n with p >= 1, got " + dim_string(C));
    }
    if (D.rows() != C.rows() || D.cols() != B.cols()) {
        throw std::invalid_argument("SystemMatrices: D must be p x q, got " + dim_string(D));
    }
    if (!all_finite(A) || !all_finite(B) || !all_finite(G) || !all_finite(C) || !all_finite(D)) {
        throw std::invalid_argument("SystemMatrices: matrices must have finite entries");
    }
}

bool ValidationReport::all_pass() const {
    for (const auto& check : checks) {
        if (!check.pass) {
            return false;
        }
    }
    return true;
}

ValidationReport validate(const SystemMatrices& system, const ToleranceConfig& tol) {
    tol.require_valid();
    system.require_well_formed();

    ValidationReport report;
    const auto n = system.n();
    const auto g = system.g();

    {
        const int rank_g = numerical_rank(system.G, tol.rank_tol_rel);
        report.g_full_column_rank = (rank_g == g);
        std::ostringstream os;
        os << "rank(G) = " << rank_g << ", g = " << g;
        report.checks.push_back({"G_full_column_rank", report.g_full_column_rank, os.str()});
    }
    {
        const int rank_c = numerical_rank(system.C, tol.rank_tol_rel);
        report.c_full_column_rank = (rank_c == n);
        std::ostringstream os;
        os << "rank(C) = " << rank_c << ", n = " << n;
        report.checks.push_back({"C_full_column_rank", report.c_full_column_rank, os.str()});
    }
    {
        report.n_at_least_g = (n >= g);
        std::ostringstream os;
        os << "n = " << n << ", g = " << g;
        report.checks.push_back({"n_at_least_g", report.n_at_least_g, os.str()});
    }
    {
        // PBH: every eigenvalue of A with |lambda| >= 1 must keep [lambda*I - A; C] at rank n.
        Eigen::EigenSolver<Matrix> es(system.A);
        bool ok = true;
        std::ostringstream os;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const Complex lambda = es.eigenvalues()(i);
            if (std::abs(lambda) < 1.0) {
                continue;
            }
            ComplexMatrix pencil(n + system.p(), n);
            pencil.topRows(n) = lambda * ComplexMatrix::Identity(n, n) - system.A.cast<Complex>();
            pencil.bottomRows(system.p()) = system.C.cast<Complex>();
            if (numerical_rank(pencil, tol.rank_tol_rel) != n) {
                ok = false;
                os << "[lambda*I - A; C] loses rank at lambda = " << lambda << "; ";
            }
        }
        report.detectable = ok;
        report.checks.push_back({"A_C_detectable", ok, ok ? "PBH test passed for all |lambda| >= 1" : os.str()});
    }
    return report;
}

bool is_symmetric(const Matrix& s, double tol) {
    if (s.rows() != s.cols()) {
        return false;
    }
    if (s.size() == 0) {
        return true;
    }
    return (s - s.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, s.cwiseAbs().maxCoeff());
}

bool is_psd(const Matrix& s, double psd_tol) {
    if (s.rows() != s.cols()) {
        return false;
    }
    if (s.size() == 0) {
        return true;
    }
    return min_eigenvalue(s) >= -psd_tol;
}

void require_valid_covariances(const NoiseCovariances& noises, const SystemMatrices& system,
                               const ToleranceConfig& tol) {
    if (noises.Q.rows() != system.g() || noises.Q.cols() != system.g()) {
        throw std::invalid_argument("NoiseCovariances: Q must be g x g");
    }
    if (noises.R.rows() != system.p() || noises.R.cols() != system.p()) {
        throw std::invalid_argument("NoiseCovariances: R must be p x p");
    }
    if (!is_symmetric(noises.Q, tol.psd_tol) || !is_symmetric(noises.R, tol.psd_tol)) {
        throw std::invalid_argument("NoiseCovariances: Q and R must be symmetric");
    }
    if (!is_psd(noises.Q, tol.psd_tol)) {
        throw std::invalid_argument("NoiseCovariances: Q must be positive semidefinite");
    }
    if (!is_psd(noises.R, tol.psd_tol)) {
        throw std::invalid_argument("NoiseCovariances: R must be positive semidefinite");
    }
}

}  // namespace noisecov
