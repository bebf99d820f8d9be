#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "absrec/abs.hpp"
#include "absrec/model.hpp"
#include "absrec/solvers.hpp"

namespace absrec {

/// 0.05, 0.10, ..., 0.95 — the 19-point axis used for both delta and rho.
std::vector<double> default_grid_axis();

std::vector<SolverConfig> default_solver_set();

struct GridSpec {
  Index d = 200;
  Index n_rows = 240;
  std::vector<double> delta_values = default_grid_axis();
  std::vector<double> rho_values = default_grid_axis();
  int trials_per_cell = 100;
  std::vector<SolverConfig> solvers = default_solver_set();
  double success_tol = 1e-6;  // relative l2 error for "perfect" recovery
  RngSeed master_seed{0};
  int jobs = 1;
  bool fresh_operator_per_cell = false;
  bool record_timing = true;  // false zeroes timing fields for byte-stable CSV

  void validate() const;  // throws std::invalid_argument
};

struct CellStats {
  int successes = 0;
  int trials = 0;
  double total_time = 0.0;     // seconds, per-solver wall clock over trials
  double mean_rel_err = 0.0;

  bool operator==(const CellStats&) const = default;
};

struct PhaseGrid {
  std::vector<std::string> solver_names;
  std::vector<double> delta_values;
  std::vector<double> rho_values;
  std::vector<CellStats> stats;  // [solver][delta][rho]

  CellStats& at(std::size_t solver, std::size_t di, std::size_t ri);
  const CellStats& at(std::size_t solver, std::size_t di, std::size_t ri) const;
  std::size_t solver_index(const std::string& name) const;  // throws if absent

  bool operator==(const PhaseGrid&) const = default;
};

struct TrialOutcome {
  double rel_err = 0.0;
  double elapsed = 0.0;
  bool success = false;
  bool solver_failed = false;
};

struct CellResult {
  std::uint64_t seed = 0;
  double delta = 0.0;
  double rho = 0.0;
  int trial_index = 0;
  std::vector<TrialOutcome> per_solver;  // parallel to GridSpec::solvers
};

/// Runs every configured solver on one fresh instance. Per-instance solver
/// parameters (OMP-k/TST sparsity N-l, GAP target cosparsity l) are wired
/// from the instance. Solver failures are recorded, never thrown.
CellResult run_trial(const GridSpec& spec, const AnalysisOperator& op,
                     double delta, double rho, std::uint64_t trial_seed,
                     int trial_index);

std::vector<CellResult> run_cell(const GridSpec& spec,
                                 const AnalysisOperator& op, double delta,
                                 double rho, std::size_t cell_index);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Full grid run: deterministic per-trial seeds, optional worker pool
/// (spec.jobs), schedule-independent aggregation.
PhaseGrid run_grid(const GridSpec& spec, const ProgressFn& progress = {});

/// header: solver,delta,rho,successes,trials,success_rate,total_time_s,mean_rel_err
/// Reals are shortest round-trip decimals; rows sorted by (solver, delta, rho).
void export_csv(const PhaseGrid& grid, std::ostream& out);
void export_csv_file(const PhaseGrid& grid, const std::string& path);
PhaseGrid import_csv(std::istream& in);
PhaseGrid import_csv_file(const std::string& path);

/// Plain PGM (P2) success map for one solver: rho on rows (increasing
/// downward), delta on columns, pixel = round(255 * success_rate).
void export_success_map(const PhaseGrid& grid, const std::string& solver,
                        std::ostream& out);
void export_success_map_file(const PhaseGrid& grid, const std::string& solver,
                             const std::string& path);

/// One column per solver, total wall-clock seconds over the whole grid.
std::string timing_table(const PhaseGrid& grid);

}  // namespace absrec
