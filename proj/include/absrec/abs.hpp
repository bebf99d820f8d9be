#pragma once

#include <string>

#include "absrec/model.hpp"
#include "absrec/numerics.hpp"
#include "absrec/solvers.hpp"

namespace absrec {

/// Stacked constraint system [M*D; P_D], (y; 0) that turns analysis
/// recovery into synthesis recovery over the coefficient vector.
struct AugmentedSystem {
  Matrix a_tilde;  // (m + N - d) x N
  Vector y_tilde;  // length m + N - d, trailing N - d entries zero
  Index m_rows;    // split point between measurement and subspace blocks
};

struct SolverReport {
  Vector gamma_hat;  // length N
  Vector x_hat;      // length d, D * gamma_hat
  int iterations = 0;
  double residual_norm = 0.0;  // ||y_tilde - A_tilde * gamma_hat||
  double elapsed_seconds = 0.0;
  std::string solver_name;
  bool converged = true;
};

AugmentedSystem build_augmented_system(const AnalysisOperator& op,
                                       const Matrix& m_mat, const Vector& y);

/// Builds the augmented system, runs the configured synthesis solver on it,
/// and maps the coefficients back through the dictionary. Non-convergence is
/// reported through the converged flag, never thrown. Analysis-domain kinds
/// (GapBaseline, OracleAnalysis) are rejected with std::invalid_argument.
SolverReport abs_recover(const AnalysisOperator& op, const Matrix& m_mat,
                         const Vector& y, const SolverConfig& solver);

/// Indices j with |(Omega x)_j| <= tol * ||x||.
Cosupport cosupport_of(const AnalysisOperator& op, const Vector& x,
                       double tol);

}  // namespace absrec
