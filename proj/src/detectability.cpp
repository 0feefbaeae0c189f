#include "noisecov/detectability.hpp"

#include <algorithm>
#include <cmath>

#include "noisecov/linalg.hpp"
#include "noisecov/rng.hpp"

namespace noisecov {

namespace {

// Candidates are accepted as zeros when the pencil rank drops at them; a looser
// cutoff than the generic rank tolerance absorbs the eigenvalue-solver error.
constexpr double kVerifyTol = 1e-6;
constexpr double kClusterTol = 1e-6;
constexpr std::uint64_t kPencilSeed = 0x5EEDD15C0DEull;

ComplexMatrix pencil_at(const SystemMatrices& sys, const Complex& z) {
    const auto n = sys.n();
    const auto p = sys.p();
    const auto q = sys.q();
    ComplexMatrix m(n + p, n + q);
    m.topLeftCorner(n, n) = z * ComplexMatrix::Identity(n, n) - sys.A.cast<Complex>();
    m.topRightCorner(n, q) = -sys.B.cast<Complex>();
    m.bottomLeftCorner(p, n) = sys.C.cast<Complex>();
    m.bottomRightCorner(p, q) = sys.D.cast<Complex>();
    return m;
}

bool rank_drops_at(const SystemMatrices& sys, const Complex& z, int target) {
    return numerical_rank(pencil_at(sys, z), kVerifyTol) < target;
}

struct BorderedSolve {
    std::vector<Complex> candidates;
    bool clean = false;
};

BorderedSolve solve_bordered(const Matrix& A, const Matrix& Bt, const Matrix& C, const Matrix& Dt,
                             std::uint64_t round) {
    const auto n = A.rows();
    const auto p = C.rows();
    const auto s = Bt.cols();
    const auto extra = p - s;

    Matrix f(n + p, n + p);
    f.topLeftCorner(n, n) = -A;
    f.block(0, n, n, s) = -Bt;
    f.bottomLeftCorner(p, n) = C;
    f.block(n, n, p, s) = Dt;
    for (Eigen::Index j = 0; j < extra; ++j) {
        for (Eigen::Index i = 0; i < n + p; ++i) {
            f(i, n + s + j) = 2.0 * rng::uniform01(kPencilSeed, round, static_cast<std::uint64_t>(j * (n + p) + i)) - 1.0;
        }
    }
    Matrix e = Matrix::Zero(n + p, n + p);
    e.topLeftCorner(n, n).setIdentity();

    BorderedSolve out;
    Eigen::GeneralizedEigenSolver<Matrix> ges;
    ges.compute(-f, e, false);
    if (ges.info() != Eigen::Success) {
        return out;
    }
    out.clean = true;
    for (Eigen::Index i = 0; i < ges.alphas().size(); ++i) {
        const Complex alpha = ges.alphas()(i);
        const double beta = ges.betas()(i);
        if (std::abs(alpha) < 1e-12 && std::abs(beta) < 1e-12) {
            // the bordered pencil degenerated for this draw
            out.clean = false;
            continue;
        }
        if (std::abs(beta) <= 1e-12 * (1.0 + std::abs(alpha))) {
            continue;  // infinite eigenvalue
        }
        const Complex z = alpha / beta;
        if (std::abs(z) > 1e8) {
            continue;
        }
        out.candidates.push_back(z);
    }
    return out;
}

// Row subsets of the compressed pencil, determinant interpolated as a polynomial
// in z, roots from the companion matrix. Only used for tiny systems when the
// bordered solves did not produce a usable pencil.
std::vector<Complex> minor_root_search(const Matrix& A, const Matrix& Bt, const Matrix& C,
                                       const Matrix& Dt) {
    const int n = static_cast<int>(A.rows());
    const int p = static_cast<int>(C.rows());
    const int s = static_cast<int>(Bt.cols());
    const int dim = n + s;

    Matrix full_const(n + p, dim);
    full_const.topLeftCorner(n, n) = -A;
    full_const.topRightCorner(n, s) = -Bt;
    full_const.bottomLeftCorner(p, n) = C;
    full_const.bottomRightCorner(p, s) = Dt;

    std::vector<bool> mask(n + p, false);
    std::fill(mask.begin(), mask.begin() + dim, true);

    std::vector<Complex> best_candidates;
    double best_scale = 0.0;
    std::vector<double> points(dim + 1);
    for (int j = 0; j <= dim; ++j) points[j] = 0.37 + 0.61 * j;

    do {
        std::vector<int> chosen;
        for (int i = 0; i < n + p; ++i) {
            if (mask[i]) chosen.push_back(i);
        }

        Vector values(dim + 1);
        for (int j = 0; j <= dim; ++j) {
            Matrix sub(dim, dim);
            for (int r = 0; r < dim; ++r) {
                sub.row(r) = full_const.row(chosen[r]);
                if (chosen[r] < n) {
                    sub(r, chosen[r]) += points[j];
                }
            }
            values(j) = sub.determinant();
        }
        const double scale = values.cwiseAbs().maxCoeff();
        if (scale <= best_scale || scale < 1e-10) continue;

        Matrix vander(dim + 1, dim + 1);
        for (int j = 0; j <= dim; ++j) {
            double t = 1.0;
            for (int c = 0; c <= dim; ++c) {
                vander(j, c) = t;
                t *= points[j];
            }
        }
        Vector coeffs = vander.colPivHouseholderQr().solve(values);
        int degree = dim;
        while (degree > 0 && std::abs(coeffs(degree)) < 1e-10 * scale) --degree;
        std::vector<Complex> candidates;
        if (degree > 0) {
            Matrix companion = Matrix::Zero(degree, degree);
            for (int i = 0; i < degree; ++i) companion(0, i) = -coeffs(degree - 1 - i) / coeffs(degree);
            for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
            Eigen::EigenSolver<Matrix> es(companion, false);
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
                candidates.push_back(es.eigenvalues()(i));
            }
        }
        best_scale = scale;
        best_candidates = std::move(candidates);
    } while (std::prev_permutation(mask.begin(), mask.end()));

    return best_candidates;
}

InvariantZero::Kind classify(const Complex& z, double zero_tol) {
    const double mag = std::abs(z);
    if (mag < 1.0 - zero_tol) return InvariantZero::Kind::Stable;
    if (mag <= 1.0 + zero_tol) return InvariantZero::Kind::Marginal;
    return InvariantZero::Kind::Unstable;
}

}  // namespace

const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::Yes: return "yes";
        case Tristate::No: return "no";
        case Tristate::Indeterminate: return "indeterminate";
    }
    return "?";
}

bool rank_matching(const SystemMatrices& system, const ToleranceConfig& tol) {
    const auto p = system.p();
    const auto q = system.q();
    Matrix top(2 * p, 2 * q);
    top.topLeftCorner(p, q) = system.C * system.B;
    top.topRightCorner(p, q) = system.D;
    top.bottomLeftCorner(p, q) = system.D;
    top.bottomRightCorner(p, q).setZero();

    Matrix bd(system.n() + p, q);
    bd.topRows(system.n()) = system.B;
    bd.bottomRows(p) = system.D;

    return numerical_rank(top, tol.rank_tol_rel) ==
           numerical_rank(system.D, tol.rank_tol_rel) + numerical_rank(bd, tol.rank_tol_rel);
}

InvariantZeroResult invariant_zeros(const SystemMatrices& system, const ToleranceConfig& tol) {
    tol.require_valid();
    system.require_well_formed();

    const auto n = system.n();
    const auto p = system.p();
    const auto q = system.q();

    InvariantZeroResult result;

    Matrix bd(n + p, q);
    bd.topRows(n) = system.B;
    bd.bottomRows(p) = system.D;
    const int s = numerical_rank(bd, tol.rank_tol_rel);
    result.rank_target = static_cast<int>(n) + s;

    // normal rank from three fixed pseudo-random evaluation points
    for (std::uint64_t i = 0; i < 3; ++i) {
        const double radius = 0.7 + 0.8 * rng::uniform01(kPencilSeed, 100, 2 * i);
        const double angle = 2.0 * M_PI * rng::uniform01(kPencilSeed, 100, 2 * i + 1);
        const Complex z = std::polar(radius, angle);
        result.normal_rank = std::max(result.normal_rank, numerical_rank(pencil_at(system, z), tol.rank_tol_rel));
    }
    if (result.normal_rank < result.rank_target) {
        result.degenerate = true;
        return result;
    }

    // column compression: only the range of [B; D] contributes to the rank test
    Matrix Bt(n, s);
    Matrix Dt(p, s);
    if (q > 0 && s > 0) {
        Eigen::JacobiSVD<Matrix> svd(bd, Eigen::ComputeFullV);
        const Matrix v = svd.matrixV().leftCols(s);
        Bt = system.B * v;
        Dt = system.D * v;
    }

    std::vector<std::pair<Complex, int>> verified;  // (candidate, round)
    int clean_rounds = 0;
    for (std::uint64_t round = 0; round < 4 && clean_rounds < 2; ++round) {
        const BorderedSolve solve = solve_bordered(system.A, Bt, system.C, Dt, round);
        if (solve.clean) {
            ++clean_rounds;
        }
        for (const Complex& z : solve.candidates) {
            if (rank_drops_at(system, z, result.rank_target)) {
                verified.emplace_back(z, static_cast<int>(round));
            }
        }
    }
    if (clean_rounds == 0 && n + p <= 6) {
        for (const Complex& z : minor_root_search(system.A, Bt, system.C, Dt)) {
            if (rank_drops_at(system, z, result.rank_target)) {
                verified.emplace_back(z, 0);
            }
        }
    } else if (clean_rounds == 0) {
        throw SolverError("invariant_zeros: generalized eigenvalue solves failed for every bordering");
    }

    // cluster duplicates across rounds; multiplicity is the largest per-round count
    struct Cluster {
        Complex anchor;
        std::vector<Complex> members;
        std::map<int, int> per_round;
    };
    std::vector<Cluster> clusters;
    for (const auto& [z, round] : verified) {
        bool placed = false;
        for (auto& cluster : clusters) {
            if (std::abs(z - cluster.anchor) <= kClusterTol * std::max(1.0, std::abs(cluster.anchor))) {
                cluster.members.push_back(z);
                cluster.per_round[round] += 1;
                placed = true;
                break;
            }
        }
        if (!placed) {
            clusters.push_back({z, {z}, {{round, 1}}});
        }
    }
    for (const auto& cluster : clusters) {
        Complex mean(0.0, 0.0);
        for (const Complex& z : cluster.members) mean += z;
        mean /= static_cast<double>(cluster.members.size());
        int multiplicity = 1;
        for (const auto& [round, count] : cluster.per_round) {
            multiplicity = std::max(multiplicity, count);
        }
        InvariantZero zero;
        zero.value = mean;
        zero.multiplicity = multiplicity;
        zero.kind = classify(mean, tol.zero_tol);
        result.zeros.push_back(zero);
    }
    std::sort(result.zeros.begin(), result.zeros.end(), [](const InvariantZero& a, const InvariantZero& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return result;
}

StrongDetectabilityReport strongly_detectable(const SystemMatrices& system, const ToleranceConfig& tol) {
    StrongDetectabilityReport report;
    report.rank_matching = rank_matching(system, tol);
    report.zeros = invariant_zeros(system, tol);
    report.minimum_phase = true;
    for (const auto& zero : report.zeros.zeros) {
        if (zero.kind != InvariantZero::Kind::Stable) {
            report.minimum_phase = false;
        }
    }
    if (report.zeros.degenerate) {
        report.minimum_phase = false;
        report.strongly_detectable = Tristate::Indeterminate;
    } else {
        report.strongly_detectable =
            (report.rank_matching && report.minimum_phase) ? Tristate::Yes : Tristate::No;
    }
    return report;
}

}  // namespace noisecov
