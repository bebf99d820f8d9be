#pragma once

#include <optional>
#include <string>
#include <vector>

#include "absrec/model.hpp"
#include "absrec/numerics.hpp"

namespace absrec {

enum class SolverKind {
  OmpK,
  OmpEps,
  Tst,
  Bp,
  GapBaseline,
  OracleSynthesis,
  OracleAnalysis,
};

std::string solver_name(SolverKind kind);
std::optional<SolverKind> solver_from_name(const std::string& name);

/// True for solvers that run on the synthesis system (A, y); GAP and the
/// analysis oracle work in signal space directly.
bool is_synthesis_solver(SolverKind kind);

struct BpTolerances {
  double duality_gap = 1e-10;  // relative surrogate duality gap at exit
  double newton_tol = 1e-14;   // reciprocal condition floor for the KKT solve
  int max_newton = 100;
};

struct SolverConfig {
  SolverKind kind = SolverKind::OmpEps;
  std::optional<int> k;          // OmpK / Tst target sparsity
  double eps_residual = 1e-9;    // OmpEps stopping residual
  int max_iterations = 1000;
  BpTolerances bp;
  // TST stage sizes and proxy step; alpha = beta = k gives subspace pursuit.
  std::optional<int> tst_alpha;
  std::optional<int> tst_beta;
  double tst_kappa = 1.0;
  std::optional<int> target_l;   // GAP target cosparsity
  std::optional<int> oracle_k_max;
  std::optional<int> oracle_l_min;
};

struct SynthesisResult {
  Vector gamma;
  int iterations = 0;
  bool converged = true;
  std::vector<double> residual_norms;  // after each iteration
  double duality_gap = 0.0;            // BP only
};

struct AnalysisResult {
  Vector x;
  int iterations = 0;
  bool converged = true;
  std::vector<int> cosupport_sizes;  // GAP: |Lambda| after each iteration
};

struct OracleSynthesisResult {
  Vector gamma;
  int support_size = 0;
  bool found = false;
  bool unique = false;  // all feasible supports at that size give this gamma
};

struct OracleAnalysisResult {
  Vector x;
  int cosparsity = 0;
  bool found = false;
  bool unique = false;
};

struct OmpStop {
  std::optional<int> k;
  std::optional<double> eps;
  int max_iterations = 1000;
};

/// Orthogonal Matching Pursuit. Selects the column with the largest
/// absolute correlation with the residual (lowest index wins ties),
/// re-solves least squares on the selected set, repeats until k atoms,
/// residual below eps, or stagnation.
SynthesisResult omp(const Matrix& a, const Vector& y, const OmpStop& stop);

/// Two Stage Thresholding, subspace-pursuit member by default
/// (alpha = beta = k, kappa = 1). Stage 1 thresholds the proxy
/// gamma + kappa*A^T(y - A gamma) and unions with the current support;
/// stage 2 keeps the top-beta of the least-squares fit on the union.
SynthesisResult tst(const Matrix& a, const Vector& y, int k,
                    int max_iterations, std::optional<int> alpha = {},
                    std::optional<int> beta = {}, double kappa = 1.0);

/// Equality-constrained l1 minimization (min ||g||_1 s.t. a*g = y) by a
/// primal-dual interior-point method on the split LP. Throws
/// std::runtime_error if y is not in the column span of a.
SynthesisResult basis_pursuit(const Matrix& a, const Vector& y,
                              const BpTolerances& cfg = {});

/// Greedy Analysis Pursuit baseline: start from the full cosupport, solve
/// min ||Omega_Lambda x|| s.t. y = Mx, and peel off the most violated row
/// until |Lambda| reaches target_l or the cosupport residual vanishes.
AnalysisResult gap(const AnalysisOperator& op, const Matrix& m_mat,
                   const Vector& y, int target_l);

/// Exhaustive l0 synthesis oracle: smallest support size admitting an
/// exact fit, by enumeration. Throws std::invalid_argument when the
/// enumeration would exceed ~1e7 supports.
OracleSynthesisResult oracle_synthesis(const Matrix& a, const Vector& y,
                                       int k_max);

/// Exhaustive cosupport oracle: largest cosparsity l >= l_min admitting x
/// with Omega_Lambda x = 0 and y = Mx, by enumeration over cosupports.
OracleAnalysisResult oracle_analysis(const AnalysisOperator& op,
                                     const Matrix& m_mat, const Vector& y,
                                     int l_min);

}  // namespace absrec
