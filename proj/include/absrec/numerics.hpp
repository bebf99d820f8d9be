#pragma once

#include <Eigen/Dense>

namespace absrec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// SVD factorization A = U diag(s) V^T with full U and V, plus the
/// numerical rank under the standard max(rows,cols)*eps*s_max rule.
struct SvdResult {
  Matrix u;
  Vector singular_values;  // nonincreasing, all >= 0
  Matrix v;
  Index numerical_rank = 0;

  double rank_tolerance() const;
};

/// Throws std::invalid_argument if the matrix is empty or contains
/// non-finite entries.
SvdResult svd(const Matrix& a);

/// Moore-Penrose pseudo-inverse: invert singular values above the rank
/// tolerance, zero the rest.
Matrix pseudo_inverse(const Matrix& a);

/// Orthonormal basis of the nullspace of a d x N matrix, arranged as the
/// rows of an (N - rank) x N matrix. Rows are trailing right singular
/// vectors, so the result has orthonormal rows. Full-rank d x N input
/// (d <= N) gives exactly N - d rows; square invertible input gives a
/// 0 x N matrix.
Matrix nullspace_basis(const Matrix& d_mat);

/// Minimum-norm least-squares solution of a*z = b.
Vector least_squares(const Matrix& a, const Vector& b);

void require_finite(const Matrix& a, const char* what);
void require_finite(const Vector& v, const char* what);

}  // namespace absrec
