#include "noisecov/linalg.hpp"

#include <cmath>

namespace noisecov {

namespace {

template <typename MatrixType>
int rank_from_svd(const MatrixType& m, double rel_tol) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<MatrixType> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(0) > 0.0)) {
        return 0;
    }
    const double cutoff = rel_tol * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace

int numerical_rank(const Matrix& m, double rel_tol) {
    return rank_from_svd(m, rel_tol);
}

int numerical_rank(const ComplexMatrix& m, double rel_tol) {
    return rank_from_svd(m, rel_tol);
}

Matrix left_null_space(const Matrix& m, double rel_tol) {
    const Eigen::Index rows = m.rows();
    if (m.cols() == 0) {
        return Matrix::Identity(rows, rows);
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cutoff = rel_tol * sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > cutoff) {
                ++rank;
            }
        }
    }
    return svd.matrixU().rightCols(rows - rank).transpose();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector vec(const Matrix& a) {
    return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) {
        throw std::invalid_argument("unvec: size mismatch");
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix duplication_matrix(int m) {
    const int cols = m * (m + 1) / 2;
    Matrix d = Matrix::Zero(m * m, cols);
    int col = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j; i < m; ++i) {
            d(j * m + i, col) = 1.0;
            if (i != j) {
                d(i * m + j, col) = 1.0;
            }
            ++col;
        }
    }
    return d;
}

Matrix symmetric_basis(int m) {
    const int cols = m * (m + 1) / 2;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix b = Matrix::Zero(m * m, cols);
    int col = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j; i < m; ++i) {
            if (i == j) {
                b(j * m + i, col) = 1.0;
            } else {
                b(j * m + i, col) = inv_sqrt2;
                b(i * m + j, col) = inv_sqrt2;
            }
            ++col;
        }
    }
    return b;
}

Vector svec(const Matrix& s) {
    const int m = static_cast<int>(s.rows());
    const double sqrt2 = std::sqrt(2.0);
    Vector v(m * (m + 1) / 2);
    int idx = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j; i < m; ++i) {
            v(idx++) = (i == j) ? s(i, j) : sqrt2 * 0.5 * (s(i, j) + s(j, i));
        }
    }
    return v;
}

Matrix smat(const Vector& v) {
    const int m = static_cast<int>(std::round((std::sqrt(8.0 * static_cast<double>(v.size()) + 1.0) - 1.0) / 2.0));
    if (m * (m + 1) / 2 != v.size()) {
        throw std::invalid_argument("smat: length is not a triangular number");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix s(m, m);
    int idx = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j; i < m; ++i) {
            if (i == j) {
                s(i, j) = v(idx);
            } else {
                s(i, j) = inv_sqrt2 * v(idx);
                s(j, i) = inv_sqrt2 * v(idx);
            }
            ++idx;
        }
    }
    return s;
}

Matrix psd_project(const Matrix& s) {
    const Matrix sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Vector lambda = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().transpose();
}

double min_eigenvalue(const Matrix& s) {
    if (s.size() == 0) {
        return 0.0;
    }
    const Matrix sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace noisecov
