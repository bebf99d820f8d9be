#include "absrec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace absrec {

namespace {

constexpr int kMaxRedraws = 64;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gaussian_matrix(Index rows, Index cols, RandomStream& rng) {
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      a(i, j) = rng.normal();
    }
  }
  return a;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master;
  (void)splitmix64(state);
  state ^= stream * 0xd1342543de82ef95ULL;
  return splitmix64(state);
}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<Index> RandomStream::sample_indices(Index n, Index count) {
  if (count > n) throw std::invalid_argument("sample_indices: count > n");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < count; ++i) {
    const Index j =
        i + static_cast<Index>(engine_() % static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  std::sort(pool.begin(), pool.end());
  return pool;
}

AnalysisOperator::AnalysisOperator(Matrix omega) : omega_(std::move(omega)) {
  require_finite(omega_, "AnalysisOperator");
  if (omega_.rows() < omega_.cols() || omega_.cols() == 0) {
    throw std::invalid_argument("AnalysisOperator: need N >= d >= 1");
  }
  const SvdResult dec = svd(omega_);
  if (dec.numerical_rank != omega_.cols()) {
    throw std::invalid_argument("AnalysisOperator: not full column rank");
  }
  dict_ = pseudo_inverse(omega_);
  null_proj_ = nullspace_basis(dict_);
}

AnalysisOperator generate_tight_frame(Index n_rows, Index dim, RngSeed seed) {
  if (n_rows < dim || dim < 1) {
    throw std::invalid_argument("generate_tight_frame: need n_rows >= dim >= 1");
  }
  RandomStream rng(seed);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const Matrix g = gaussian_matrix(n_rows, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix q =
        qr.householderQ() * Matrix::Identity(n_rows, dim);
    try {
      return AnalysisOperator(q);
    } catch (const std::invalid_argument&) {
      // rank-deficient draw; regenerate
    }
  }
  throw std::runtime_error("generate_tight_frame: repeated degenerate draws");
}

std::pair<Vector, Cosupport> generate_cosparse_signal(
    const AnalysisOperator& op, Index l, RngSeed seed) {
  const Index n = op.n_rows();
  const Index d = op.dim();
  if (l < 0 || l > d) {
    throw std::invalid_argument(
        "generate_cosparse_signal: cosparsity must be in [0, dim]");
  }
  RandomStream rng(seed);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Cosupport lambda{rng.sample_indices(n, l)};

    Vector x;
    if (l == 0) {
      x = gaussian_matrix(d, 1, rng).col(0);
    } else {
      Matrix omega_lambda(l, d);
      for (Index i = 0; i < l; ++i) {
        omega_lambda.row(i) =
            op.omega().row(lambda.indices[static_cast<std::size_t>(i)]);
      }
      const Matrix basis = nullspace_basis(omega_lambda);
      if (basis.rows() == 0) continue;  // cosupport rows span R^d
      const Vector g = gaussian_matrix(d, 1, rng).col(0);
      x = basis.transpose() * (basis * g);
    }
    const double norm = x.norm();
    if (norm < 1e-12) continue;
    x /= norm;

    // Exactly N - l rows must see the signal; a near-orthogonal
    // off-cosupport row forces a redraw.
    const Vector analyzed = op.omega() * x;
    Index zeros = 0;
    for (Index j = 0; j < n; ++j) {
      if (std::abs(analyzed(j)) <= 1e-8) ++zeros;
    }
    bool cosupport_clean = true;
    for (Index idx : lambda.indices) {
      if (std::abs(analyzed(idx)) > 1e-10) cosupport_clean = false;
    }
    if (zeros != l || !cosupport_clean) continue;
    return {std::move(x), std::move(lambda)};
  }
  throw std::runtime_error(
      "generate_cosparse_signal: no valid draw (cosupport rows span R^d?)");
}

Matrix generate_measurement_matrix(Index m, Index dim, RngSeed seed) {
  if (m < 1 || m > dim) {
    throw std::invalid_argument(
        "generate_measurement_matrix: need 1 <= m <= dim");
  }
  RandomStream rng(seed);
  Matrix a = gaussian_matrix(m, dim, rng);
  for (Index j = 0; j < dim; ++j) {
    a.col(j).normalize();
  }
  return a;
}

CosparseInstance make_instance(const AnalysisOperator& op, double delta,
                               double rho, RngSeed seed) {
  const Index d = op.dim();
  const Index m = static_cast<Index>(std::llround(delta * static_cast<double>(d)));
  if (m < 1 || m > d) {
    throw std::invalid_argument("make_instance: m = round(delta*d) out of range");
  }
  const Index l =
      d - static_cast<Index>(std::llround(rho * static_cast<double>(m)));
  if (l < 0 || l > d) {
    throw std::invalid_argument("make_instance: l = d - round(rho*m) out of range");
  }

  auto [x, lambda] =
      generate_cosparse_signal(op, l, RngSeed{split_seed(seed.value, 1)});
  Matrix m_mat =
      generate_measurement_matrix(m, d, RngSeed{split_seed(seed.value, 2)});

  CosparseInstance inst;
  inst.y = m_mat * x;
  inst.x = std::move(x);
  inst.cosupport = std::move(lambda);
  inst.m_mat = std::move(m_mat);
  inst.delta = delta;
  inst.rho = rho;
  inst.seed = seed.value;
  return inst;
}

}  // namespace absrec
