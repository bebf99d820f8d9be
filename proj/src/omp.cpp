#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "absrec/solvers.hpp"

namespace absrec {

namespace {

Matrix select_columns(const Matrix& a, const std::vector<Index>& cols) {
  Matrix sub(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    sub.col(static_cast<Index>(i)) = a.col(cols[i]);
  }
  return sub;
}

}  // namespace

SynthesisResult omp(const Matrix& a, const Vector& y, const OmpStop& stop) {
  if (a.rows() != y.size()) {
    throw std::invalid_argument("omp: dimension mismatch");
  }
  if (!stop.k && !stop.eps) {
    throw std::invalid_argument("omp: need a k or eps stopping rule");
  }
  const Index n = a.cols();
  const int k_target = stop.k ? std::min(*stop.k, static_cast<int>(n))
                              : static_cast<int>(n);
  const double eps = stop.eps.value_or(0.0);

  Vector col_norms(n);
  for (Index j = 0; j < n; ++j) col_norms(j) = a.col(j).norm();

  SynthesisResult out;
  out.gamma = Vector::Zero(n);
  Vector residual = y;
  std::vector<Index> support;
  std::vector<bool> selected(static_cast<std::size_t>(n), false);

  while (static_cast<int>(support.size()) < k_target &&
         out.iterations < stop.max_iterations) {
    if (stop.eps && residual.norm() < eps) break;

    // Normalized correlations; lowest index wins ties.
    Index best = -1;
    double best_corr = -1.0;
    for (Index j = 0; j < n; ++j) {
      if (col_norms(j) == 0.0) continue;
      const double corr = std::abs(a.col(j).dot(residual)) / col_norms(j);
      if (corr > best_corr) {
        best_corr = corr;
        best = j;
      }
    }
    if (best < 0 || selected[static_cast<std::size_t>(best)]) {
      out.converged = false;  // stagnation
      break;
    }
    selected[static_cast<std::size_t>(best)] = true;
    support.push_back(best);
    std::sort(support.begin(), support.end());

    const Vector coeffs = least_squares(select_columns(a, support), y);
    out.gamma.setZero();
    for (std::size_t i = 0; i < support.size(); ++i) {
      out.gamma(support[i]) = coeffs(static_cast<Index>(i));
    }
    residual = y - a * out.gamma;
    ++out.iterations;
    out.residual_norms.push_back(residual.norm());
  }

  if (stop.eps && residual.norm() >= eps &&
      out.iterations >= stop.max_iterations) {
    out.converged = false;
  }
  return out;
}

}  // namespace absrec
