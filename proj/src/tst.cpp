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

std::vector<Index> top_indices(const Vector& v, int count) {
  const Index n = v.size();
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) idx[static_cast<std::size_t>(j)] = j;
  // stable: lowest index wins on equal magnitudes
  std::stable_sort(idx.begin(), idx.end(), [&](Index p, Index q) {
    return std::abs(v(p)) > std::abs(v(q));
  });
  idx.resize(static_cast<std::size_t>(count));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

SynthesisResult tst(const Matrix& a, const Vector& y, int k,
                    int max_iterations, std::optional<int> alpha,
                    std::optional<int> beta, double kappa) {
  if (a.rows() != y.size()) {
    throw std::invalid_argument("tst: dimension mismatch");
  }
  const Index n = a.cols();
  if (k < 1 || k > n) {
    throw std::invalid_argument("tst: need 1 <= k <= cols");
  }
  const int stage1 = std::min<int>(alpha.value_or(k), static_cast<int>(n));
  const int stage2 = std::min<int>(beta.value_or(k), static_cast<int>(n));

  SynthesisResult out;
  out.gamma = Vector::Zero(n);
  std::vector<Index> support;
  double best_residual = y.norm();
  Vector best_gamma = out.gamma;

  for (int iter = 0; iter < max_iterations; ++iter) {
    const Vector residual = y - a * out.gamma;
    if (residual.norm() < 1e-12) break;

    const Vector proxy = out.gamma + kappa * (a.transpose() * residual);
    std::vector<Index> candidates = top_indices(proxy, stage1);
    candidates.insert(candidates.end(), support.begin(), support.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    const Vector fit = least_squares(select_columns(a, candidates), y);
    Vector expanded = Vector::Zero(n);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      expanded(candidates[i]) = fit(static_cast<Index>(i));
    }

    std::vector<Index> new_support = top_indices(expanded, stage2);
    const Vector coeffs = least_squares(select_columns(a, new_support), y);
    Vector gamma_new = Vector::Zero(n);
    for (std::size_t i = 0; i < new_support.size(); ++i) {
      gamma_new(new_support[i]) = coeffs(static_cast<Index>(i));
    }

    const double res_new = (y - a * gamma_new).norm();
    ++out.iterations;
    out.residual_norms.push_back(res_new);

    const bool support_stable = new_support == support;
    const bool improving = res_new < best_residual - 1e-15;
    if (improving) {
      best_residual = res_new;
      best_gamma = gamma_new;
    }
    out.gamma = std::move(gamma_new);
    support = std::move(new_support);
    if (support_stable || !improving) {
      if (!improving && !support_stable) out.converged = false;
      break;
    }
  }

  out.gamma = best_gamma;
  return out;
}

}  // namespace absrec
