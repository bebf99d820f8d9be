#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "absrec/model.hpp"
#include "absrec/solvers.hpp"

using namespace absrec;

namespace {

Matrix gaussian_unit_columns(Index rows, Index cols, std::uint64_t seed) {
  RandomStream rng(RngSeed{seed});
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = rng.normal();
  }
  for (Index j = 0; j < cols; ++j) a.col(j).normalize();
  return a;
}

Vector planted_sparse(Index n, const std::vector<Index>& support,
                      std::uint64_t seed) {
  RandomStream rng(RngSeed{seed});
  Vector gamma = Vector::Zero(n);
  for (Index j : support) gamma(j) = rng.normal() + (rng.normal() > 0 ? 2 : -2);
  return gamma;
}

}  // namespace

TEST_CASE("omp on the identity picks the right atom") {
  Vector y = Vector::Zero(4);
  y(1) = 3.0;
  const auto res = omp(Matrix::Identity(4, 4), y, OmpStop{1, {}, 10});
  CHECK((res.gamma - y).norm() <= 1e-12);
  CHECK(res.iterations == 1);
}

TEST_CASE("omp with k = 0 returns zero after zero iterations") {
  const auto res = omp(Matrix::Identity(4, 4), Vector::Ones(4), OmpStop{0, {}, 10});
  CHECK(res.gamma.norm() == 0.0);
  CHECK(res.iterations == 0);
}

TEST_CASE("omp-eps recovers a planted 3-sparse vector") {
  const Matrix a = gaussian_unit_columns(20, 50, 1);
  const Vector gamma0 = planted_sparse(50, {3, 17, 41}, 2);
  const auto res = omp(a, a * gamma0, OmpStop{{}, 1e-9, 100});
  CHECK((res.gamma - gamma0).norm() <= 1e-6);
}

TEST_CASE("omp residual is nonincreasing and orthogonal to the support") {
  const Matrix a = gaussian_unit_columns(15, 30, 3);
  RandomStream rng(RngSeed{4});
  Vector y(15);
  for (Index i = 0; i < 15; ++i) y(i) = rng.normal();

  const auto res = omp(a, y, OmpStop{10, {}, 100});
  for (std::size_t i = 1; i < res.residual_norms.size(); ++i) {
    CHECK(res.residual_norms[i] <= res.residual_norms[i - 1] + 1e-12);
  }
  const Vector residual = y - a * res.gamma;
  for (Index j = 0; j < 30; ++j) {
    if (res.gamma(j) != 0.0) {
      CHECK(std::abs(a.col(j).dot(residual)) <= 1e-8);
    }
  }
}

TEST_CASE("tst trivial cases") {
  RandomStream rng(RngSeed{5});
  Vector y(6);
  for (Index i = 0; i < 6; ++i) y(i) = rng.normal();

  SUBCASE("identity with k = len(y) fits in one iteration") {
    const auto res = tst(Matrix::Identity(6, 6), y, 6, 50);
    CHECK((res.gamma - y).norm() <= 1e-10);
    CHECK(res.iterations == 1);
  }

  SUBCASE("zero measurements give the zero vector") {
    const auto res = tst(Matrix::Identity(6, 6), Vector::Zero(6), 3, 50);
    CHECK(res.gamma.norm() == 0.0);
  }
}

TEST_CASE("tst recovers planted sparse vectors on most seeds") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix a = gaussian_unit_columns(30, 60, 100 + seed);
    const Vector gamma0 = planted_sparse(60, {5, 19, 33, 51}, 200 + seed);
    const auto res = tst(a, a * gamma0, 4, 100);
    if ((res.gamma - gamma0).norm() <= 1e-6) ++hits;
  }
  CHECK(hits >= 6);
}

TEST_CASE("tst support size never exceeds k") {
  const Matrix a = gaussian_unit_columns(12, 24, 6);
  RandomStream rng(RngSeed{7});
  Vector y(12);
  for (Index i = 0; i < 12; ++i) y(i) = rng.normal();
  const auto res = tst(a, y, 5, 50);
  Index nonzeros = 0;
  for (Index j = 0; j < 24; ++j) {
    if (res.gamma(j) != 0.0) ++nonzeros;
  }
  CHECK(nonzeros <= 5);
  CHECK((y - a * res.gamma).norm() <= y.norm() + 1e-12);
}

TEST_CASE("basis pursuit on the identity returns y") {
  RandomStream rng(RngSeed{8});
  Vector y(5);
  for (Index i = 0; i < 5; ++i) y(i) = rng.normal();
  const auto res = basis_pursuit(Matrix::Identity(5, 5), y);
  CHECK((res.gamma - y).norm() <= 1e-8);
  CHECK(res.converged);
}

TEST_CASE("basis pursuit finds a planted single atom under orthonormal rows") {
  // a: orthonormal rows (first 6 rows of a random orthogonal matrix)
  const Matrix q = generate_tight_frame(10, 10, RngSeed{9}).omega();
  const Matrix a = q.topRows(6);
  const Vector y = 2.5 * a.col(3);
  const auto res = basis_pursuit(a, y);
  Vector expected = Vector::Zero(10);
  expected(3) = 2.5;
  CHECK((res.gamma - expected).norm() <= 1e-6);
}

TEST_CASE("basis pursuit matches the exhaustive oracle on planted instances") {
  const Matrix a = gaussian_unit_columns(20, 50, 10);
  const Vector gamma0 = planted_sparse(50, {2, 11, 37}, 11);
  const Vector y = a * gamma0;
  const auto oracle = oracle_synthesis(a, y, 3);
  REQUIRE(oracle.found);
  REQUIRE(oracle.unique);
  const auto res = basis_pursuit(a, y);
  CHECK((res.gamma - oracle.gamma).norm() <= 1e-6);
  CHECK(res.duality_gap < 1e-10);
}

TEST_CASE("basis pursuit rejects infeasible constraints") {
  Matrix a(2, 1);
  a << 1, 0;
  Vector y(2);
  y << 1, 1;  // second coordinate unreachable
  CHECK_THROWS_AS(basis_pursuit(a, y), std::runtime_error);
}

TEST_CASE("gap trivial and planted cases") {
  SUBCASE("zero measurements stop at initialization") {
    const auto op = generate_tight_frame(12, 10, RngSeed{12});
    const Matrix m_mat = generate_measurement_matrix(6, 10, RngSeed{13});
    const auto res = gap(op, m_mat, Vector::Zero(6), 8);
    CHECK(res.x.norm() <= 1e-12);
    CHECK(res.iterations == 0);
  }

  SUBCASE("recovers an exactly cosparse instance") {
    const auto op = generate_tight_frame(24, 20, RngSeed{14});
    const auto [x, lambda] = generate_cosparse_signal(op, 18, RngSeed{15});
    const Matrix m_mat = generate_measurement_matrix(14, 20, RngSeed{16});
    const auto res = gap(op, m_mat, m_mat * x, 18);
    CHECK((res.x - x).norm() <= 1e-6);

    // cosupport estimate strictly shrinks, one row per iteration
    for (std::size_t i = 0; i < res.cosupport_sizes.size(); ++i) {
      CHECK(res.cosupport_sizes[i] == 24 - static_cast<int>(i) - 1);
    }
    CHECK(res.iterations <= 24 - 18);
  }
}

TEST_CASE("synthesis oracle") {
  SUBCASE("zero target is zero-sparse") {
    const auto res = oracle_synthesis(Matrix::Identity(4, 4), Vector::Zero(4), 4);
    CHECK(res.found);
    CHECK(res.support_size == 0);
    CHECK(res.gamma.norm() == 0.0);
  }

  SUBCASE("identity with two nonzeros") {
    Vector y = Vector::Zero(5);
    y(1) = 1.0;
    y(3) = -2.0;
    const auto res = oracle_synthesis(Matrix::Identity(5, 5), y, 5);
    CHECK(res.found);
    CHECK(res.support_size == 2);
    CHECK((res.gamma - y).norm() <= 1e-10);
  }

  SUBCASE("planted support on a random 6x10 system") {
    const Matrix a = gaussian_unit_columns(6, 10, 17);
    const Vector gamma0 = planted_sparse(10, {2, 7}, 18);
    const auto res = oracle_synthesis(a, a * gamma0, 4);
    CHECK(res.found);
    CHECK(res.support_size == 2);
    CHECK((res.gamma - gamma0).norm() <= 1e-8);
  }

  SUBCASE("enumeration guard") {
    const Matrix a = gaussian_unit_columns(10, 100, 19);
    CHECK_THROWS_AS(oracle_synthesis(a, Vector::Ones(10), 50),
                    std::invalid_argument);
  }
}

TEST_CASE("analysis oracle") {
  const auto op = generate_tight_frame(10, 8, RngSeed{20});

  SUBCASE("zero measurements give the zero signal at full cosparsity") {
    const Matrix m_mat = generate_measurement_matrix(5, 8, RngSeed{21});
    const auto res = oracle_analysis(op, m_mat, Vector::Zero(5), 0);
    CHECK(res.found);
    CHECK(res.cosparsity == 10);
    CHECK(res.x.norm() <= 1e-12);
  }

  SUBCASE("generator round-trip") {
    const auto [x, lambda] = generate_cosparse_signal(op, 6, RngSeed{22});
    const Matrix m_mat = generate_measurement_matrix(6, 8, RngSeed{23});
    const auto res = oracle_analysis(op, m_mat, m_mat * x, 0);
    CHECK(res.found);
    if (res.unique) {
      CHECK((res.x - x).norm() <= 1e-8);
    }
  }
}
