#include <chrono>
#include <stdexcept>

#include "absrec/abs.hpp"

namespace absrec {

AugmentedSystem build_augmented_system(const AnalysisOperator& op,
                                       const Matrix& m_mat, const Vector& y) {
  if (m_mat.cols() != op.dim()) {
    throw std::invalid_argument(
        "build_augmented_system: measurement matrix width != operator dim");
  }
  if (m_mat.rows() != y.size()) {
    throw std::invalid_argument(
        "build_augmented_system: measurement count != y length");
  }
  const Index m = m_mat.rows();
  const Index n = op.n_rows();
  const Index extra = op.null_proj().rows();  // N - d for full-rank operators

  AugmentedSystem sys;
  sys.m_rows = m;
  sys.a_tilde.resize(m + extra, n);
  sys.a_tilde.topRows(m) = m_mat * op.dict();
  sys.a_tilde.bottomRows(extra) = op.null_proj();
  sys.y_tilde = Vector::Zero(m + extra);
  sys.y_tilde.head(m) = y;
  return sys;
}

SolverReport abs_recover(const AnalysisOperator& op, const Matrix& m_mat,
                         const Vector& y, const SolverConfig& solver) {
  if (!is_synthesis_solver(solver.kind)) {
    throw std::invalid_argument(
        "abs_recover: " + solver_name(solver.kind) +
        " is not a synthesis solver");
  }

  const auto start = std::chrono::steady_clock::now();
  const AugmentedSystem sys = build_augmented_system(op, m_mat, y);

  SolverReport report;
  report.solver_name = solver_name(solver.kind);
  SynthesisResult res;
  try {
    switch (solver.kind) {
      case SolverKind::OmpK:
        if (!solver.k) throw std::invalid_argument("abs_recover: OmpK needs k");
        res = omp(sys.a_tilde, sys.y_tilde,
                  OmpStop{solver.k, {}, solver.max_iterations});
        break;
      case SolverKind::OmpEps:
        res = omp(sys.a_tilde, sys.y_tilde,
                  OmpStop{{}, solver.eps_residual, solver.max_iterations});
        break;
      case SolverKind::Tst:
        if (!solver.k) throw std::invalid_argument("abs_recover: Tst needs k");
        res = tst(sys.a_tilde, sys.y_tilde, *solver.k, solver.max_iterations,
                  solver.tst_alpha, solver.tst_beta, solver.tst_kappa);
        break;
      case SolverKind::Bp:
        res = basis_pursuit(sys.a_tilde, sys.y_tilde, solver.bp);
        break;
      case SolverKind::OracleSynthesis: {
        const int k_max =
            solver.oracle_k_max.value_or(static_cast<int>(op.n_rows()));
        const OracleSynthesisResult oracle =
            oracle_synthesis(sys.a_tilde, sys.y_tilde, k_max);
        res.gamma = oracle.found ? oracle.gamma
                                 : Vector::Zero(op.n_rows());
        res.converged = oracle.found;
        break;
      }
      default:
        throw std::invalid_argument("abs_recover: unhandled solver kind");
    }
  } catch (const std::runtime_error&) {
    // solver-side failure (e.g. infeasible BP); report the zero iterate
    res.gamma = Vector::Zero(op.n_rows());
    res.converged = false;
  }

  report.gamma_hat = std::move(res.gamma);
  report.x_hat = op.dict() * report.gamma_hat;
  report.iterations = res.iterations;
  report.converged = res.converged;
  report.residual_norm = (sys.y_tilde - sys.a_tilde * report.gamma_hat).norm();
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

Cosupport cosupport_of(const AnalysisOperator& op, const Vector& x,
                       double tol) {
  if (x.size() != op.dim()) {
    throw std::invalid_argument("cosupport_of: signal length != operator dim");
  }
  if (tol <= 0) throw std::invalid_argument("cosupport_of: tol must be > 0");
  const Vector analyzed = op.omega() * x;
  const double cutoff = tol * x.norm();
  Cosupport out;
  for (Index j = 0; j < op.n_rows(); ++j) {
    if (std::abs(analyzed(j)) <= cutoff) out.indices.push_back(j);
  }
  return out;
}

}  // namespace absrec
