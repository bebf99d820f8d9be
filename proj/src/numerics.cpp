#include "absrec/numerics.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace absrec {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

double SvdResult::rank_tolerance() const {
  const double s_max = singular_values.size() > 0 ? singular_values(0) : 0.0;
  const double dim = static_cast<double>(std::max(u.rows(), v.rows()));
  return dim * std::numeric_limits<double>::epsilon() * s_max;
}

SvdResult svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument("svd: empty matrix");
  }
  require_finite(a, "svd");

  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    throw std::runtime_error("svd: decomposition did not converge");
  }

  SvdResult out;
  out.u = dec.matrixU();
  out.singular_values = dec.singularValues();
  out.v = dec.matrixV();

  const double tol = out.rank_tolerance();
  Index rank = 0;
  while (rank < out.singular_values.size() && out.singular_values(rank) > tol) {
    ++rank;
  }
  out.numerical_rank = rank;
  return out;
}

Matrix pseudo_inverse(const Matrix& a) {
  const SvdResult dec = svd(a);
  const Index r = dec.numerical_rank;
  Matrix result = Matrix::Zero(a.cols(), a.rows());
  if (r == 0) return result;
  result = dec.v.leftCols(r) *
           dec.singular_values.head(r).cwiseInverse().asDiagonal() *
           dec.u.leftCols(r).transpose();
  return result;
}

Matrix nullspace_basis(const Matrix& d_mat) {
  const SvdResult dec = svd(d_mat);
  const Index n = d_mat.cols();
  const Index r = dec.numerical_rank;
  return dec.v.rightCols(n - r).transpose();
}

Vector least_squares(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw std::invalid_argument("least_squares: dimension mismatch");
  }
  require_finite(a, "least_squares");
  require_finite(b, "least_squares");
  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw std::runtime_error("least_squares: SVD did not converge");
  }
  return dec.solve(b);
}

}  // namespace absrec
