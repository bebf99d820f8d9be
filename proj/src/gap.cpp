#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "absrec/solvers.hpp"

namespace absrec {

AnalysisResult gap(const AnalysisOperator& op, const Matrix& m_mat,
                   const Vector& y, int target_l) {
  const Index n = op.n_rows();
  const Index d = op.dim();
  if (m_mat.cols() != d || m_mat.rows() != y.size()) {
    throw std::invalid_argument("gap: dimension mismatch");
  }
  if (target_l < 0 || target_l > n) {
    throw std::invalid_argument("gap: target_l out of range");
  }

  // Parametrize the measurement-feasible set once: x = x0 + Z w with Z an
  // orthonormal basis of the nullspace of M.
  const Vector x0 = least_squares(m_mat, y);
  const Matrix z = nullspace_basis(m_mat).transpose();  // d x (d - rank M)

  std::vector<Index> lambda(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) lambda[static_cast<std::size_t>(j)] = j;

  AnalysisResult out;
  out.x = x0;

  while (true) {
    const auto l = static_cast<Index>(lambda.size());
    Matrix omega_lambda(l, d);
    for (Index i = 0; i < l; ++i) {
      omega_lambda.row(i) =
          op.omega().row(lambda[static_cast<std::size_t>(i)]);
    }

    // min over w of ||Omega_Lambda (x0 + Z w)||
    if (z.cols() > 0) {
      const Vector w =
          least_squares(omega_lambda * z, -(omega_lambda * x0));
      if (!w.allFinite()) {
        out.converged = false;
        return out;
      }
      out.x = x0 + z * w;
    }

    const Vector on_cosupport = omega_lambda * out.x;
    if (static_cast<int>(lambda.size()) <= target_l ||
        on_cosupport.norm() < 1e-9) {
      break;
    }

    Index worst = 0;
    double worst_val = -1.0;
    for (Index i = 0; i < l; ++i) {
      const double v = std::abs(on_cosupport(i));
      if (v > worst_val) {
        worst_val = v;
        worst = i;
      }
    }
    lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(worst));
    ++out.iterations;
    out.cosupport_sizes.push_back(static_cast<int>(lambda.size()));
  }
  return out;
}

}  // namespace absrec
