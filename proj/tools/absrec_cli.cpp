#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "absrec/abs.hpp"
#include "absrec/bench.hpp"
#include "absrec/instance_io.hpp"
#include "absrec/model.hpp"

namespace {

using namespace absrec;

// Axis spec: either "0.1,0.2,0.5" or "start:step:end" (inclusive end).
std::vector<double> parse_axis(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string::npos) {
    double start = 0, step = 0, end = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> start >> c1 >> step >> c2 >> end) || c1 != ':' || c2 != ':' ||
        step <= 0) {
      throw CLI::ValidationError("axis", "expected start:step:end");
    }
    for (double v = start; v <= end + 1e-12; v += step) values.push_back(v);
  } else {
    std::istringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) values.push_back(std::stod(token));
  }
  if (values.empty()) throw CLI::ValidationError("axis", "empty axis");
  return values;
}

std::vector<SolverConfig> parse_solvers(const std::string& spec) {
  std::vector<SolverConfig> solvers;
  std::istringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto kind = solver_from_name(token);
    if (!kind) throw CLI::ValidationError("solvers", "unknown solver: " + token);
    SolverConfig cfg;
    cfg.kind = *kind;
    solvers.push_back(cfg);
  }
  if (solvers.empty()) throw CLI::ValidationError("solvers", "no solvers");
  return solvers;
}

int cmd_phase(const GridSpec& spec, const std::string& out_csv,
              const std::string& out_pgm_dir, bool quiet) {
  ProgressFn progress;
  if (!quiet) {
    progress = [](std::size_t done, std::size_t total) {
      if (done % 100 == 0 || done == total) {
        std::cerr << "\r" << done << "/" << total << " trials" << std::flush;
        if (done == total) std::cerr << '\n';
      }
    };
  }
  const PhaseGrid grid = run_grid(spec, progress);

  if (!out_csv.empty()) export_csv_file(grid, out_csv);
  if (!out_pgm_dir.empty()) {
    std::filesystem::create_directories(out_pgm_dir);
    for (const std::string& name : grid.solver_names) {
      export_success_map_file(
          grid, name, out_pgm_dir + "/" + name + ".pgm");
    }
  }
  if (spec.record_timing) std::cout << timing_table(grid);
  return 0;
}

int cmd_recover(const std::string& in_path, const std::string& solver) {
  const StoredInstance stored = read_instance_file(in_path);
  const AnalysisOperator op(stored.omega);
  const CosparseInstance& inst = stored.instance;

  const auto kind = solver_from_name(solver);
  if (!kind) {
    std::cerr << "unknown solver: " << solver << '\n';
    return 1;
  }
  SolverConfig cfg;
  cfg.kind = *kind;
  const auto l = inst.cosupport.size();
  cfg.k = static_cast<int>(op.n_rows() - l);
  cfg.target_l = static_cast<int>(l);

  Vector x_hat;
  if (is_synthesis_solver(cfg.kind)) {
    const SolverReport report = abs_recover(op, inst.m_mat, inst.y, cfg);
    x_hat = report.x_hat;
    std::cout << "solver: " << report.solver_name << '\n'
              << "iterations: " << report.iterations << '\n'
              << "residual_norm: " << report.residual_norm << '\n'
              << "elapsed_s: " << report.elapsed_seconds << '\n'
              << "converged: " << (report.converged ? "yes" : "no") << '\n';
  } else if (cfg.kind == SolverKind::GapBaseline) {
    const AnalysisResult res = gap(op, inst.m_mat, inst.y, *cfg.target_l);
    x_hat = res.x;
    std::cout << "solver: gap\niterations: " << res.iterations << '\n'
              << "converged: " << (res.converged ? "yes" : "no") << '\n';
  } else {
    const OracleAnalysisResult res =
        oracle_analysis(op, inst.m_mat, inst.y, static_cast<int>(l));
    if (!res.found) {
      std::cerr << "oracle found no feasible cosupport\n";
      return 1;
    }
    x_hat = res.x;
    std::cout << "solver: oracle-analysis\ncosparsity: " << res.cosparsity
              << "\nunique: " << (res.unique ? "yes" : "no") << '\n';
  }
  const double rel_err = (x_hat - inst.x).norm() / inst.x.norm();
  std::cout << "relative_error: " << rel_err << '\n'
            << "recovered: " << (rel_err < 1e-6 ? "yes" : "no") << '\n';
  return 0;
}

int cmd_gen(Index d, Index n, double delta, double rho, std::uint64_t seed,
            const std::string& out_path) {
  const AnalysisOperator op =
      generate_tight_frame(n, d, RngSeed{split_seed(seed, 0)});
  const CosparseInstance inst =
      make_instance(op, delta, rho, RngSeed{split_seed(seed, 1)});
  write_instance_file(out_path, op.omega(), inst);
  std::cout << "wrote " << out_path << " (d=" << d << " N=" << n
            << " m=" << inst.m_mat.rows() << " l=" << inst.cosupport.size()
            << ")\n";
  return 0;
}

int cmd_oracle(const std::string& in_path) {
  const StoredInstance stored = read_instance_file(in_path);
  const AnalysisOperator op(stored.omega);
  const CosparseInstance& inst = stored.instance;

  const OracleAnalysisResult direct =
      oracle_analysis(op, inst.m_mat, inst.y, 0);
  SolverConfig cfg;
  cfg.kind = SolverKind::OracleSynthesis;
  const SolverReport via_abs = abs_recover(op, inst.m_mat, inst.y, cfg);

  std::cout << "analysis oracle: found=" << direct.found
            << " cosparsity=" << direct.cosparsity
            << " unique=" << direct.unique << '\n';
  std::cout << "abs + synthesis oracle: converged=" << via_abs.converged
            << " residual=" << via_abs.residual_norm << '\n';
  if (direct.found && via_abs.converged) {
    const double diff = (direct.x - via_abs.x_hat).norm() /
                        std::max(1.0, direct.x.norm());
    std::cout << "relative difference: " << diff << '\n'
              << "agreement: " << (diff <= 1e-8 ? "yes" : "no") << '\n';
  }
  const double err_direct = (direct.x - inst.x).norm() / inst.x.norm();
  const double err_abs = (via_abs.x_hat - inst.x).norm() / inst.x.norm();
  std::cout << "error vs ground truth: analysis=" << err_direct
            << " abs=" << err_abs << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis-by-synthesis cosparse recovery benchmark"};
  app.require_subcommand(1);

  // phase
  auto* phase = app.add_subcommand("phase", "Run a phase-transition grid");
  Index d = 200, n = 240;
  std::string delta_spec = "0.05:0.05:0.95";
  std::string rho_spec = "0.05:0.05:0.95";
  int trials = 100;
  std::string solver_spec = "omp-k,omp-eps,tst,bp,gap";
  std::uint64_t seed = 0;
  std::string out_csv, out_pgm_dir;
  int jobs = 1;
  double success_tol = 1e-6;
  bool no_timing = false, fresh_op = false, quiet = false;
  phase->add_option("--d", d, "Signal dimension");
  phase->add_option("--n", n, "Analysis operator rows");
  phase->add_option("--delta", delta_spec, "Delta axis (list or start:step:end)");
  phase->add_option("--rho", rho_spec, "Rho axis (list or start:step:end)");
  phase->add_option("--trials", trials, "Trials per cell");
  phase->add_option("--solvers", solver_spec, "Comma-separated solver list");
  phase->add_option("--seed", seed, "Master seed");
  phase->add_option("--out-csv", out_csv, "CSV output path");
  phase->add_option("--out-pgm-dir", out_pgm_dir, "Directory for PGM success maps");
  phase->add_option("--jobs", jobs, "Worker threads");
  phase->add_option("--success-tol", success_tol, "Relative-error success threshold");
  phase->add_flag("--no-timing", no_timing,
                  "Zero timing fields for byte-reproducible CSV output");
  phase->add_flag("--fresh-operator-per-cell", fresh_op,
                  "Regenerate the analysis operator for every grid cell");
  phase->add_flag("--quiet", quiet, "Suppress progress output");

  // recover
  auto* recover = app.add_subcommand("recover", "Recover a serialized instance");
  std::string in_path, solver_name_arg = "bp";
  recover->add_option("--in", in_path, "Instance file")->required();
  recover->add_option("--solver", solver_name_arg, "Solver name");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate and serialize an instance");
  Index gen_d = 50, gen_n = 60;
  double gen_delta = 0.5, gen_rho = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "instance.txt";
  gen->add_option("--d", gen_d, "Signal dimension");
  gen->add_option("--n", gen_n, "Analysis operator rows");
  gen->add_option("--delta", gen_delta, "Compression ratio m/d");
  gen->add_option("--rho", gen_rho, "Relative cosparsity (d-l)/m");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Output path");

  // oracle
  auto* oracle = app.add_subcommand(
      "oracle", "Compare exhaustive analysis and synthesis oracles");
  std::string oracle_in;
  oracle->add_option("--in", oracle_in, "Instance file (small!)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (phase->parsed()) {
      GridSpec spec;
      spec.d = d;
      spec.n_rows = n;
      spec.delta_values = parse_axis(delta_spec);
      spec.rho_values = parse_axis(rho_spec);
      spec.trials_per_cell = trials;
      spec.solvers = parse_solvers(solver_spec);
      spec.success_tol = success_tol;
      spec.master_seed = RngSeed{seed};
      spec.jobs = jobs;
      spec.fresh_operator_per_cell = fresh_op;
      spec.record_timing = !no_timing;
      return cmd_phase(spec, out_csv, out_pgm_dir, quiet);
    }
    if (recover->parsed()) return cmd_recover(in_path, solver_name_arg);
    if (gen->parsed()) {
      return cmd_gen(gen_d, gen_n, gen_delta, gen_rho, gen_seed, gen_out);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
