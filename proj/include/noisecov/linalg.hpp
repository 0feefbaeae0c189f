#pragma once

#include "noisecov/types.hpp"

namespace noisecov {

/// Count of singular values above rel_tol * sigma_max; 0 for an empty or zero matrix.
int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);
int numerical_rank(const ComplexMatrix& m, double rel_tol = kDefaultRankTol);

/// Orthonormal rows spanning the left null space {k : k*m = 0}.
/// A matrix with no columns has the full space as left null space (identity returned).
Matrix left_null_space(const Matrix& m, double rel_tol = kDefaultRankTol);

Matrix kron(const Matrix& a, const Matrix& b);

/// Column-stacking vectorization, consistent with vec(A*B*C) = (C^T (x) A) vec(B).
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

/// vec(X) = duplication_matrix(m) * vech(X) for symmetric m x m X,
/// with vech stacking the lower triangle column by column.
Matrix duplication_matrix(int m);

/// Orthonormal basis of the symmetric subspace of R^{m x m} (columns in vec coordinates);
/// svec/smat are the associated coordinates, so that ||svec(X)||_2 = ||X||_F.
Matrix symmetric_basis(int m);
Vector svec(const Matrix& s);
Matrix smat(const Vector& v);

/// Nearest (Frobenius) positive semidefinite matrix: symmetrize and clip negative eigenvalues.
Matrix psd_project(const Matrix& s);

/// Smallest eigenvalue of the symmetrized matrix.
double min_eigenvalue(const Matrix& s);

}  // namespace noisecov
