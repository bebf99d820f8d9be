#include "absrec/solvers.hpp"

namespace absrec {

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::OmpK: return "omp-k";
    case SolverKind::OmpEps: return "omp-eps";
    case SolverKind::Tst: return "tst";
    case SolverKind::Bp: return "bp";
    case SolverKind::GapBaseline: return "gap";
    case SolverKind::OracleSynthesis: return "oracle-synthesis";
    case SolverKind::OracleAnalysis: return "oracle-analysis";
  }
  return "unknown";
}

std::optional<SolverKind> solver_from_name(const std::string& name) {
  if (name == "omp-k") return SolverKind::OmpK;
  if (name == "omp-eps") return SolverKind::OmpEps;
  if (name == "tst") return SolverKind::Tst;
  if (name == "bp") return SolverKind::Bp;
  if (name == "gap") return SolverKind::GapBaseline;
  if (name == "oracle-synthesis") return SolverKind::OracleSynthesis;
  if (name == "oracle-analysis") return SolverKind::OracleAnalysis;
  return std::nullopt;
}

bool is_synthesis_solver(SolverKind kind) {
  switch (kind) {
    case SolverKind::GapBaseline:
    case SolverKind::OracleAnalysis:
      return false;
    default:
      return true;
  }
}

}  // namespace absrec
