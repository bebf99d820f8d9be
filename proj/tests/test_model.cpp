#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "absrec/instance_io.hpp"
#include "absrec/model.hpp"

using namespace absrec;

TEST_CASE("generators are deterministic given the seed") {
  const auto a = generate_tight_frame(12, 10, RngSeed{7});
  const auto b = generate_tight_frame(12, 10, RngSeed{7});
  CHECK(a.omega() == b.omega());
  CHECK(a.dict() == b.dict());

  const Matrix m1 = generate_measurement_matrix(5, 10, RngSeed{9});
  const Matrix m2 = generate_measurement_matrix(5, 10, RngSeed{9});
  CHECK(m1 == m2);

  const auto i1 = make_instance(a, 0.5, 0.5, RngSeed{13});
  const auto i2 = make_instance(a, 0.5, 0.5, RngSeed{13});
  CHECK(i1.x == i2.x);
  CHECK(i1.y == i2.y);
  CHECK(i1.m_mat == i2.m_mat);
  CHECK(i1.cosupport == i2.cosupport);
}

TEST_CASE("split_seed separates streams") {
  CHECK(split_seed(1, 0) != split_seed(1, 1));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
}

TEST_CASE("square tight frame is orthogonal") {
  const auto op = generate_tight_frame(3, 3, RngSeed{1});
  CHECK((op.omega().transpose() * op.omega() - Matrix::Identity(3, 3)).norm() <=
        1e-10);
  CHECK(op.null_proj().rows() == 0);
}

TEST_CASE("paper-shaped tight frame") {
  const auto op = generate_tight_frame(240, 200, RngSeed{2});
  const Index d = op.dim();
  CHECK((op.omega().transpose() * op.omega() - Matrix::Identity(d, d)).norm() <=
        1e-10 * std::sqrt(static_cast<double>(d)));
  CHECK((op.dict() - op.omega().transpose()).norm() <= 1e-10);
  CHECK(op.null_proj().rows() == 40);
}

TEST_CASE("cosparse signal generation") {
  const auto op = generate_tight_frame(24, 20, RngSeed{3});

  SUBCASE("l = 0 gives a dense unit-norm signal") {
    const auto [x, lambda] = generate_cosparse_signal(op, 0, RngSeed{4});
    CHECK(lambda.size() == 0);
    CHECK(x.norm() == doctest::Approx(1.0));
  }

  SUBCASE("cosupport rows annihilate the signal, the rest do not") {
    const auto [x, lambda] = generate_cosparse_signal(op, 15, RngSeed{5});
    CHECK(lambda.size() == 15);
    CHECK(x.norm() == doctest::Approx(1.0));
    const Vector analyzed = op.omega() * x;
    Index zeros = 0;
    for (Index j = 0; j < op.n_rows(); ++j) {
      if (std::abs(analyzed(j)) <= 1e-8) ++zeros;
    }
    CHECK(zeros == 15);
    for (Index idx : lambda.indices) CHECK(std::abs(analyzed(idx)) <= 1e-10);
  }

  SUBCASE("l > dim rejected") {
    CHECK_THROWS_AS(generate_cosparse_signal(op, 21, RngSeed{6}),
                    std::invalid_argument);
  }
}

TEST_CASE("l = d on a square orthogonal operator exhausts redraws") {
  const auto op = generate_tight_frame(6, 6, RngSeed{7});
  CHECK_THROWS_AS(generate_cosparse_signal(op, 6, RngSeed{8}),
                  std::runtime_error);
}

TEST_CASE("paper-scale signal has exactly N - l nonzero coefficients") {
  const auto op = generate_tight_frame(240, 200, RngSeed{9});
  const auto [x, lambda] = generate_cosparse_signal(op, 180, RngSeed{10});
  const Vector analyzed = op.omega() * x;
  Index nonzeros = 0;
  for (Index j = 0; j < 240; ++j) {
    if (std::abs(analyzed(j)) > 1e-8) ++nonzeros;
  }
  CHECK(nonzeros == 60);
}

TEST_CASE("measurement matrix has unit-norm columns") {
  const Matrix tiny = generate_measurement_matrix(1, 1, RngSeed{11});
  CHECK(std::abs(std::abs(tiny(0, 0)) - 1.0) <= 1e-12);

  const Matrix a = generate_measurement_matrix(100, 200, RngSeed{12});
  for (Index j = 0; j < a.cols(); ++j) {
    CHECK(std::abs(a.col(j).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("make_instance wires the cell arithmetic") {
  const auto op = generate_tight_frame(24, 20, RngSeed{13});

  SUBCASE("delta = rho = 1 gives a fully determined system") {
    const auto inst = make_instance(op, 1.0, 1.0, RngSeed{14});
    CHECK(inst.m_mat.rows() == 20);
    CHECK(inst.cosupport.size() == 0);
  }

  SUBCASE("midpoint cell") {
    const auto inst = make_instance(op, 0.5, 0.5, RngSeed{15});
    CHECK(inst.m_mat.rows() == 10);
    CHECK(inst.cosupport.size() == 15);  // l = d - round(rho * m)
    CHECK(inst.y == inst.m_mat * inst.x);
    CHECK(inst.x.norm() == doctest::Approx(1.0));
    Vector on_cosupport(inst.cosupport.size());
    for (Index i = 0; i < inst.cosupport.size(); ++i) {
      on_cosupport(i) = op.omega()
                            .row(inst.cosupport.indices[static_cast<std::size_t>(i)])
                            .dot(inst.x);
    }
    CHECK(on_cosupport.cwiseAbs().maxCoeff() <= 1e-10);
  }

  SUBCASE("paper parameters") {
    const auto big = generate_tight_frame(240, 200, RngSeed{16});
    const auto inst = make_instance(big, 0.5, 0.5, RngSeed{17});
    CHECK(inst.m_mat.rows() == 100);
    CHECK(inst.cosupport.size() == 150);
  }
}

TEST_CASE("instance serialization round-trips bit-exactly") {
  const auto op = generate_tight_frame(12, 10, RngSeed{18});
  const auto inst = make_instance(op, 0.6, 0.5, RngSeed{19});

  std::stringstream buffer;
  write_instance(buffer, op.omega(), inst);
  const StoredInstance back = read_instance(buffer);

  CHECK(back.omega == op.omega());
  CHECK(back.instance.x == inst.x);
  CHECK(back.instance.y == inst.y);
  CHECK(back.instance.m_mat == inst.m_mat);
  CHECK(back.instance.cosupport == inst.cosupport);
  CHECK(back.instance.delta == inst.delta);
  CHECK(back.instance.rho == inst.rho);
  CHECK(back.instance.seed == inst.seed);
}

TEST_CASE("instance reader rejects garbage") {
  std::stringstream bad("not-an-instance 1\n");
  CHECK_THROWS_AS(read_instance(bad), std::runtime_error);
}
