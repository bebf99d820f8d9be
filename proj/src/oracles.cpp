#include <cmath>
#include <stdexcept>
#include <vector>

#include "absrec/solvers.hpp"

namespace absrec {

namespace {

constexpr double kEnumerationGuard = 1e7;
constexpr double kFeasTol = 1e-8;

double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (Index i = 1; i <= k; ++i) {
    acc *= static_cast<double>(n - k + i) / static_cast<double>(i);
    if (acc > 1e18) return acc;
  }
  return acc;
}

// Lexicographic enumeration of size-k subsets of {0..n-1}.
bool next_combination(std::vector<Index>& comb, Index n) {
  const auto k = static_cast<Index>(comb.size());
  for (Index i = k - 1; i >= 0; --i) {
    if (comb[static_cast<std::size_t>(i)] < n - k + i) {
      ++comb[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < k; ++j) {
        comb[static_cast<std::size_t>(j)] =
            comb[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

std::vector<Index> first_combination(Index k) {
  std::vector<Index> comb(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  return comb;
}

}  // namespace

OracleSynthesisResult oracle_synthesis(const Matrix& a, const Vector& y,
                                       int k_max) {
  if (a.rows() != y.size()) {
    throw std::invalid_argument("oracle_synthesis: dimension mismatch");
  }
  const Index n = a.cols();
  k_max = std::min<int>(k_max, static_cast<int>(n));
  for (Index k = 0; k <= k_max; ++k) {
    if (binomial(n, k) > kEnumerationGuard) {
      throw std::invalid_argument("oracle_synthesis: enumeration too large");
    }
  }
  const double tol = kFeasTol * std::max(1.0, y.norm());

  OracleSynthesisResult out;
  for (Index k = 0; k <= k_max; ++k) {
    std::vector<Vector> candidates;
    std::vector<Index> support = first_combination(k);
    do {
      Vector gamma = Vector::Zero(n);
      if (k > 0) {
        Matrix sub(a.rows(), k);
        for (Index i = 0; i < k; ++i) {
          sub.col(i) = a.col(support[static_cast<std::size_t>(i)]);
        }
        const Vector coeffs = least_squares(sub, y);
        for (Index i = 0; i < k; ++i) {
          gamma(support[static_cast<std::size_t>(i)]) = coeffs(i);
        }
      }
      if ((y - a * gamma).norm() <= tol) {
        candidates.push_back(std::move(gamma));
      }
    } while (k > 0 && next_combination(support, n));

    if (!candidates.empty()) {
      out.gamma = candidates.front();
      out.support_size = static_cast<int>(k);
      out.found = true;
      out.unique = true;
      const double scale = std::max(1.0, out.gamma.norm());
      for (const Vector& c : candidates) {
        if ((c - out.gamma).norm() > kFeasTol * scale) out.unique = false;
      }
      return out;
    }
  }
  return out;
}

OracleAnalysisResult oracle_analysis(const AnalysisOperator& op,
                                     const Matrix& m_mat, const Vector& y,
                                     int l_min) {
  const Index n = op.n_rows();
  const Index d = op.dim();
  if (m_mat.cols() != d || m_mat.rows() != y.size()) {
    throw std::invalid_argument("oracle_analysis: dimension mismatch");
  }
  for (Index l = l_min; l <= n; ++l) {
    if (binomial(n, l) > kEnumerationGuard) {
      throw std::invalid_argument("oracle_analysis: enumeration too large");
    }
  }
  const double y_tol = kFeasTol * std::max(1.0, y.norm());

  OracleAnalysisResult out;
  for (Index l = n; l >= l_min; --l) {
    std::vector<Vector> candidates;
    std::vector<Index> lambda = first_combination(l);
    do {
      // x solving y = Mx with Omega_Lambda x = 0, if any
      Matrix stacked(m_mat.rows() + l, d);
      stacked.topRows(m_mat.rows()) = m_mat;
      for (Index i = 0; i < l; ++i) {
        stacked.row(m_mat.rows() + i) =
            op.omega().row(lambda[static_cast<std::size_t>(i)]);
      }
      Vector rhs = Vector::Zero(m_mat.rows() + l);
      rhs.head(m_mat.rows()) = y;

      const Vector x = least_squares(stacked, rhs);
      const double x_tol = kFeasTol * std::max(1.0, x.norm());
      bool feasible = (m_mat * x - y).norm() <= y_tol;
      if (feasible && l > 0) {
        feasible = (stacked.bottomRows(l) * x).norm() <= x_tol;
      }
      if (feasible) candidates.push_back(x);
    } while (l > 0 && next_combination(lambda, n));

    if (!candidates.empty()) {
      out.x = candidates.front();
      out.cosparsity = static_cast<int>(l);
      out.found = true;
      out.unique = true;
      const double scale = std::max(1.0, out.x.norm());
      for (const Vector& c : candidates) {
        if ((c - out.x).norm() > kFeasTol * scale) out.unique = false;
      }
      return out;
    }
  }
  return out;
}

}  // namespace absrec
