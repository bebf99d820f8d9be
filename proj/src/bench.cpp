#include "absrec/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace absrec {

namespace {

constexpr std::uint64_t kOperatorStream = 0x0a5e'17f0'0d15'c0deULL;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  double v = 0;
  const auto res =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw std::runtime_error("csv: bad number '" + token + "'");
  }
  return v;
}

struct CellParams {
  Index m;
  Index l;
};

// Extreme grid corners can ask for round(rho*m) = 0, i.e. a signal in a
// zero-dimensional subspace; the grid clamps the co-dimension to 1 so every
// cell stays generable.
CellParams cell_params(Index d, double delta, double rho) {
  const auto m =
      static_cast<Index>(std::llround(delta * static_cast<double>(d)));
  const auto k =
      std::max<Index>(1, static_cast<Index>(
                             std::llround(rho * static_cast<double>(m))));
  return {m, d - k};
}

}  // namespace

std::vector<double> default_grid_axis() {
  std::vector<double> axis;
  for (int i = 1; i <= 19; ++i) axis.push_back(0.05 * i);
  return axis;
}

std::vector<SolverConfig> default_solver_set() {
  std::vector<SolverConfig> solvers(5);
  solvers[0].kind = SolverKind::OmpK;
  solvers[1].kind = SolverKind::OmpEps;
  solvers[2].kind = SolverKind::Tst;
  solvers[3].kind = SolverKind::Bp;
  solvers[4].kind = SolverKind::GapBaseline;
  return solvers;
}

void GridSpec::validate() const {
  if (d < 1 || n_rows < d) {
    throw std::invalid_argument("GridSpec: need n_rows >= d >= 1");
  }
  if (trials_per_cell < 0) {
    throw std::invalid_argument("GridSpec: negative trials_per_cell");
  }
  if (solvers.empty()) throw std::invalid_argument("GridSpec: no solvers");
  if (success_tol <= 0) throw std::invalid_argument("GridSpec: success_tol <= 0");
  if (jobs < 1) throw std::invalid_argument("GridSpec: jobs < 1");
  for (double delta : delta_values) {
    if (delta <= 0 || delta > 1) {
      throw std::invalid_argument("GridSpec: delta outside (0, 1]");
    }
    const Index m =
        static_cast<Index>(std::llround(delta * static_cast<double>(d)));
    if (m < 1 || m > d) throw std::invalid_argument("GridSpec: derived m out of range");
  }
  for (double rho : rho_values) {
    if (rho <= 0 || rho > 1) {
      throw std::invalid_argument("GridSpec: rho outside (0, 1]");
    }
  }
}

CellStats& PhaseGrid::at(std::size_t solver, std::size_t di, std::size_t ri) {
  return stats[(solver * delta_values.size() + di) * rho_values.size() + ri];
}

const CellStats& PhaseGrid::at(std::size_t solver, std::size_t di,
                               std::size_t ri) const {
  return stats[(solver * delta_values.size() + di) * rho_values.size() + ri];
}

std::size_t PhaseGrid::solver_index(const std::string& name) const {
  const auto it =
      std::find(solver_names.begin(), solver_names.end(), name);
  if (it == solver_names.end()) {
    throw std::invalid_argument("PhaseGrid: no solver named " + name);
  }
  return static_cast<std::size_t>(it - solver_names.begin());
}

CellResult run_trial(const GridSpec& spec, const AnalysisOperator& op,
                     double delta, double rho, std::uint64_t trial_seed,
                     int trial_index) {
  const Index n = op.n_rows();
  const Index d = op.dim();
  const CellParams params = cell_params(d, delta, rho);

  auto [x, lambda] = generate_cosparse_signal(op, params.l,
                                              RngSeed{split_seed(trial_seed, 1)});
  const Matrix m_mat = generate_measurement_matrix(
      params.m, d, RngSeed{split_seed(trial_seed, 2)});
  const Vector y = m_mat * x;

  CellResult result;
  result.seed = trial_seed;
  result.delta = delta;
  result.rho = rho;
  result.trial_index = trial_index;

  const int gamma_sparsity = static_cast<int>(n - params.l);
  for (const SolverConfig& base : spec.solvers) {
    SolverConfig cfg = base;
    if ((cfg.kind == SolverKind::OmpK || cfg.kind == SolverKind::Tst) &&
        !cfg.k) {
      cfg.k = gamma_sparsity;
    }
    if (cfg.kind == SolverKind::GapBaseline && !cfg.target_l) {
      cfg.target_l = static_cast<int>(params.l);
    }

    TrialOutcome outcome;
    Vector x_hat = Vector::Zero(d);
    const auto start = std::chrono::steady_clock::now();
    try {
      if (is_synthesis_solver(cfg.kind)) {
        SolverReport report = abs_recover(op, m_mat, y, cfg);
        x_hat = std::move(report.x_hat);
        outcome.solver_failed = !report.converged;
      } else if (cfg.kind == SolverKind::GapBaseline) {
        AnalysisResult res = gap(op, m_mat, y, *cfg.target_l);
        x_hat = std::move(res.x);
        outcome.solver_failed = !res.converged;
      } else {
        OracleAnalysisResult res = oracle_analysis(
            op, m_mat, y, cfg.oracle_l_min.value_or(static_cast<int>(params.l)));
        if (res.found) x_hat = std::move(res.x);
        outcome.solver_failed = !res.found;
      }
    } catch (const std::exception&) {
      outcome.solver_failed = true;
    }
    outcome.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    outcome.rel_err = (x_hat - x).norm() / x.norm();
    outcome.success = outcome.rel_err < spec.success_tol;
    result.per_solver.push_back(outcome);
  }
  return result;
}

std::vector<CellResult> run_cell(const GridSpec& spec,
                                 const AnalysisOperator& op, double delta,
                                 double rho, std::size_t cell_index) {
  std::vector<CellResult> results;
  results.reserve(static_cast<std::size_t>(spec.trials_per_cell));
  for (int t = 0; t < spec.trials_per_cell; ++t) {
    const std::uint64_t seed = split_seed(
        spec.master_seed.value,
        1 + cell_index * static_cast<std::size_t>(spec.trials_per_cell) +
            static_cast<std::size_t>(t));
    results.push_back(run_trial(spec, op, delta, rho, seed, t));
  }
  return results;
}

PhaseGrid run_grid(const GridSpec& spec, const ProgressFn& progress) {
  spec.validate();

  const std::size_t n_delta = spec.delta_values.size();
  const std::size_t n_rho = spec.rho_values.size();
  const std::size_t n_cells = n_delta * n_rho;
  const auto trials = static_cast<std::size_t>(spec.trials_per_cell);
  const std::size_t total = n_cells * trials;

  const std::uint64_t op_seed =
      split_seed(spec.master_seed.value, kOperatorStream);
  std::vector<AnalysisOperator> operators;
  if (spec.fresh_operator_per_cell) {
    operators.reserve(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c) {
      operators.push_back(generate_tight_frame(spec.n_rows, spec.d,
                                               RngSeed{split_seed(op_seed, c)}));
    }
  } else {
    operators.push_back(
        generate_tight_frame(spec.n_rows, spec.d, RngSeed{op_seed}));
  }

  std::vector<CellResult> all(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) break;
      const std::size_t cell = i / trials;
      const int t = static_cast<int>(i % trials);
      const std::size_t di = cell / n_rho;
      const std::size_t ri = cell % n_rho;
      const AnalysisOperator& op =
          spec.fresh_operator_per_cell ? operators[cell] : operators.front();
      const std::uint64_t seed =
          split_seed(spec.master_seed.value, 1 + cell * trials + i % trials);
      all[i] = run_trial(spec, op, spec.delta_values[di], spec.rho_values[ri],
                         seed, t);
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, total);
      }
    }
  };

  const int jobs = std::min<int>(spec.jobs, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  PhaseGrid grid;
  for (const SolverConfig& cfg : spec.solvers) {
    grid.solver_names.push_back(solver_name(cfg.kind));
  }
  grid.delta_values = spec.delta_values;
  grid.rho_values = spec.rho_values;
  grid.stats.assign(spec.solvers.size() * n_cells, CellStats{});

  // Sequential aggregation in trial order: schedule-independent results.
  for (std::size_t s = 0; s < spec.solvers.size(); ++s) {
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      CellStats& st = grid.at(s, cell / n_rho, cell % n_rho);
      double err_sum = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialOutcome& o = all[cell * trials + t].per_solver[s];
        ++st.trials;
        if (o.success) ++st.successes;
        if (spec.record_timing) st.total_time += o.elapsed;
        err_sum += o.rel_err;
      }
      st.mean_rel_err = st.trials > 0 ? err_sum / st.trials : 0.0;
    }
  }
  return grid;
}

void export_csv(const PhaseGrid& grid, std::ostream& out) {
  if (grid.stats.empty()) throw std::invalid_argument("export_csv: empty grid");

  out << "solver,delta,rho,successes,trials,success_rate,total_time_s,"
         "mean_rel_err\n";

  std::vector<std::size_t> solver_order(grid.solver_names.size());
  for (std::size_t i = 0; i < solver_order.size(); ++i) solver_order[i] = i;
  std::sort(solver_order.begin(), solver_order.end(),
            [&](std::size_t a, std::size_t b) {
              return grid.solver_names[a] < grid.solver_names[b];
            });
  std::vector<std::size_t> delta_order(grid.delta_values.size());
  for (std::size_t i = 0; i < delta_order.size(); ++i) delta_order[i] = i;
  std::sort(delta_order.begin(), delta_order.end(),
            [&](std::size_t a, std::size_t b) {
              return grid.delta_values[a] < grid.delta_values[b];
            });
  std::vector<std::size_t> rho_order(grid.rho_values.size());
  for (std::size_t i = 0; i < rho_order.size(); ++i) rho_order[i] = i;
  std::sort(rho_order.begin(), rho_order.end(),
            [&](std::size_t a, std::size_t b) {
              return grid.rho_values[a] < grid.rho_values[b];
            });

  for (std::size_t s : solver_order) {
    for (std::size_t di : delta_order) {
      for (std::size_t ri : rho_order) {
        const CellStats& st = grid.at(s, di, ri);
        const double rate =
            st.trials > 0 ? static_cast<double>(st.successes) / st.trials : 0.0;
        out << grid.solver_names[s] << ','
            << format_double(grid.delta_values[di]) << ','
            << format_double(grid.rho_values[ri]) << ',' << st.successes << ','
            << st.trials << ',' << format_double(rate) << ','
            << format_double(st.total_time) << ','
            << format_double(st.mean_rel_err) << '\n';
      }
    }
  }
}

void export_csv_file(const PhaseGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  export_csv(grid, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

PhaseGrid import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "solver,delta,rho,successes,trials,success_rate,total_time_s,"
              "mean_rel_err") {
    throw std::runtime_error("csv: bad header");
  }

  struct Row {
    std::string solver;
    double delta, rho;
    CellStats stats;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw std::runtime_error("csv: bad row: " + line);
    Row row;
    row.solver = fields[0];
    row.delta = parse_double(fields[1]);
    row.rho = parse_double(fields[2]);
    row.stats.successes = static_cast<int>(parse_double(fields[3]));
    row.stats.trials = static_cast<int>(parse_double(fields[4]));
    row.stats.total_time = parse_double(fields[6]);
    row.stats.mean_rel_err = parse_double(fields[7]);
    rows.push_back(std::move(row));
  }

  PhaseGrid grid;
  for (const Row& row : rows) {
    if (std::find(grid.solver_names.begin(), grid.solver_names.end(),
                  row.solver) == grid.solver_names.end()) {
      grid.solver_names.push_back(row.solver);
    }
    if (std::find(grid.delta_values.begin(), grid.delta_values.end(),
                  row.delta) == grid.delta_values.end()) {
      grid.delta_values.push_back(row.delta);
    }
    if (std::find(grid.rho_values.begin(), grid.rho_values.end(), row.rho) ==
        grid.rho_values.end()) {
      grid.rho_values.push_back(row.rho);
    }
  }
  std::sort(grid.delta_values.begin(), grid.delta_values.end());
  std::sort(grid.rho_values.begin(), grid.rho_values.end());
  grid.stats.assign(
      grid.solver_names.size() * grid.delta_values.size() *
          grid.rho_values.size(),
      CellStats{});
  for (const Row& row : rows) {
    const std::size_t s = grid.solver_index(row.solver);
    const auto di = static_cast<std::size_t>(
        std::find(grid.delta_values.begin(), grid.delta_values.end(),
                  row.delta) -
        grid.delta_values.begin());
    const auto ri = static_cast<std::size_t>(
        std::find(grid.rho_values.begin(), grid.rho_values.end(), row.rho) -
        grid.rho_values.begin());
    grid.at(s, di, ri) = row.stats;
  }
  return grid;
}

PhaseGrid import_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return import_csv(in);
}

void export_success_map(const PhaseGrid& grid, const std::string& solver,
                        std::ostream& out) {
  const std::size_t s = grid.solver_index(solver);
  const std::size_t n_delta = grid.delta_values.size();
  const std::size_t n_rho = grid.rho_values.size();

  out << "P2\n" << n_delta << ' ' << n_rho << "\n255\n";
  for (std::size_t ri = 0; ri < n_rho; ++ri) {  // rho increases downward
    for (std::size_t di = 0; di < n_delta; ++di) {
      const CellStats& st = grid.at(s, di, ri);
      const double rate =
          st.trials > 0 ? static_cast<double>(st.successes) / st.trials : 0.0;
      if (di) out << ' ';
      out << static_cast<int>(std::lround(255.0 * rate));
    }
    out << '\n';
  }
}

void export_success_map_file(const PhaseGrid& grid, const std::string& solver,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  export_success_map(grid, solver, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string timing_table(const PhaseGrid& grid) {
  if (grid.stats.empty()) throw std::invalid_argument("timing_table: empty grid");
  std::ostringstream out;
  std::vector<double> totals(grid.solver_names.size(), 0.0);
  for (std::size_t s = 0; s < grid.solver_names.size(); ++s) {
    for (std::size_t di = 0; di < grid.delta_values.size(); ++di) {
      for (std::size_t ri = 0; ri < grid.rho_values.size(); ++ri) {
        totals[s] += grid.at(s, di, ri).total_time;
      }
    }
  }
  out << "Total running times (seconds)\n";
  for (std::size_t s = 0; s < grid.solver_names.size(); ++s) {
    if (s) out << '\t';
    out << grid.solver_names[s];
  }
  out << '\n';
  for (std::size_t s = 0; s < totals.size(); ++s) {
    if (s) out << '\t';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", totals[s]);
    out << buf;
  }
  out << '\n';
  return out.str();
}

}  // namespace absrec
