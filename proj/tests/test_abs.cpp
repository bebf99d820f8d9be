#include <doctest.h>

#include <stdexcept>

#include "absrec/abs.hpp"
#include "absrec/model.hpp"

using namespace absrec;

TEST_CASE("square orthogonal operator reduces to plain synthesis") {
  const auto op = generate_tight_frame(8, 8, RngSeed{1});
  const Matrix m_mat = generate_measurement_matrix(5, 8, RngSeed{2});
  const auto [x, lambda] = generate_cosparse_signal(op, 4, RngSeed{3});
  const Vector y = m_mat * x;

  const AugmentedSystem sys = build_augmented_system(op, m_mat, y);
  CHECK(sys.a_tilde.rows() == 5);
  CHECK(sys.a_tilde == m_mat * op.dict());
  CHECK(sys.y_tilde == y);
  CHECK(sys.m_rows == 5);
}

TEST_CASE("paper dimensions produce a 140x240 system") {
  const auto op = generate_tight_frame(240, 200, RngSeed{4});
  const Matrix m_mat = generate_measurement_matrix(100, 200, RngSeed{5});
  const auto [x, lambda] = generate_cosparse_signal(op, 150, RngSeed{6});
  const Vector y = m_mat * x;

  const AugmentedSystem sys = build_augmented_system(op, m_mat, y);
  CHECK(sys.a_tilde.rows() == 140);
  CHECK(sys.a_tilde.cols() == 240);
  CHECK(sys.y_tilde.size() == 140);
  CHECK(sys.y_tilde.tail(40).cwiseAbs().maxCoeff() == 0.0);

  // bottom block: orthonormal rows, orthogonal to the dictionary rows
  const Matrix bottom = sys.a_tilde.bottomRows(40);
  CHECK((bottom * bottom.transpose() - Matrix::Identity(40, 40)).norm() <=
        1e-10);
  CHECK((bottom * op.dict().transpose()).cwiseAbs().maxCoeff() <= 1e-10);

  // gamma = Omega x is feasible for the augmented system
  const Vector gamma = op.omega() * x;
  CHECK((sys.a_tilde * gamma - sys.y_tilde).norm() <= 1e-8);
}

TEST_CASE("feasibility transport") {
  const auto op = generate_tight_frame(30, 25, RngSeed{7});
  const Matrix m_mat = generate_measurement_matrix(15, 25, RngSeed{8});
  const auto [x, lambda] = generate_cosparse_signal(op, 18, RngSeed{9});
  const Vector y = m_mat * x;
  const Vector gamma = op.omega() * x;

  const Vector x_back = op.dict() * gamma;
  CHECK((y - m_mat * x_back).norm() <= 1e-8 * y.norm());
  CHECK((gamma - op.omega() * op.dict() * gamma).norm() <=
        1e-8 * gamma.norm());
}

TEST_CASE("dimension mismatches are contract violations") {
  const auto op = generate_tight_frame(10, 8, RngSeed{10});
  const Matrix wrong = generate_measurement_matrix(4, 7, RngSeed{11});
  CHECK_THROWS_AS(build_augmented_system(op, wrong, Vector::Zero(4)),
                  std::invalid_argument);
  const Matrix m_mat = generate_measurement_matrix(4, 8, RngSeed{12});
  CHECK_THROWS_AS(build_augmented_system(op, m_mat, Vector::Zero(5)),
                  std::invalid_argument);
}

TEST_CASE("zero measurements recover the zero signal") {
  const auto op = generate_tight_frame(10, 8, RngSeed{13});
  const Matrix m_mat = generate_measurement_matrix(5, 8, RngSeed{14});
  SolverConfig cfg;
  cfg.kind = SolverKind::OmpEps;
  const SolverReport report = abs_recover(op, m_mat, Vector::Zero(5), cfg);
  CHECK(report.gamma_hat.norm() == 0.0);
  CHECK(report.x_hat.norm() == 0.0);
  CHECK(report.converged);
}

TEST_CASE("abs_recover rejects analysis-domain solvers") {
  const auto op = generate_tight_frame(10, 8, RngSeed{15});
  const Matrix m_mat = generate_measurement_matrix(5, 8, RngSeed{16});
  SolverConfig cfg;
  cfg.kind = SolverKind::GapBaseline;
  CHECK_THROWS_AS(abs_recover(op, m_mat, Vector::Zero(5), cfg),
                  std::invalid_argument);
}

TEST_CASE("tiny instance: ABS with the synthesis oracle matches the analysis oracle") {
  const auto op = generate_tight_frame(10, 8, RngSeed{17});
  const auto [x, lambda] = generate_cosparse_signal(op, 6, RngSeed{18});
  const Matrix m_mat = generate_measurement_matrix(6, 8, RngSeed{19});
  const Vector y = m_mat * x;

  const OracleAnalysisResult direct = oracle_analysis(op, m_mat, y, 0);
  REQUIRE(direct.found);

  SolverConfig cfg;
  cfg.kind = SolverKind::OracleSynthesis;
  const SolverReport via_abs = abs_recover(op, m_mat, y, cfg);
  REQUIRE(via_abs.converged);

  if (direct.unique) {
    CHECK((direct.x - via_abs.x_hat).norm() <=
          1e-8 * std::max(1.0, direct.x.norm()));
  }
}

TEST_CASE("reduction consistency for square operators") {
  const auto op = generate_tight_frame(12, 12, RngSeed{20});
  const auto [x, lambda] = generate_cosparse_signal(op, 8, RngSeed{21});
  const Matrix m_mat = generate_measurement_matrix(8, 12, RngSeed{22});
  const Vector y = m_mat * x;

  SolverConfig cfg;
  cfg.kind = SolverKind::OmpEps;
  const SolverReport via_abs = abs_recover(op, m_mat, y, cfg);

  const SynthesisResult direct =
      omp(m_mat * op.dict(), y, OmpStop{{}, cfg.eps_residual, cfg.max_iterations});
  CHECK(via_abs.gamma_hat == direct.gamma);
}

TEST_CASE("cosupport_of") {
  const auto op = generate_tight_frame(12, 10, RngSeed{23});

  SUBCASE("zero signal belongs to every row's nullspace") {
    const Cosupport all = cosupport_of(op, Vector::Zero(10), 1e-8);
    CHECK(all.size() == 12);
  }

  SUBCASE("round-trips the generator's cosupport") {
    const auto [x, lambda] = generate_cosparse_signal(op, 7, RngSeed{24});
    CHECK(cosupport_of(op, x, 1e-8) == lambda);
  }

  SUBCASE("a generic dense signal has empty cosupport") {
    RandomStream rng(RngSeed{25});
    Vector x(10);
    for (Index i = 0; i < 10; ++i) x(i) = rng.normal();
    CHECK(cosupport_of(op, x, 1e-8).size() == 0);
  }

  SUBCASE("tol must be positive") {
    CHECK_THROWS_AS(cosupport_of(op, Vector::Zero(10), 0.0),
                    std::invalid_argument);
  }
}
