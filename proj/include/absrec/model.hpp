#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "absrec/numerics.hpp"

namespace absrec {

/// Seed for the artifact's fixed PRNG (mt19937_64 + Box-Muller). Same seed
/// and parameters give bit-identical draws on every platform.
struct RngSeed {
  std::uint64_t value = 0;
};

/// Derives an independent child seed for a numbered stream (splitmix64).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

/// Deterministic Gaussian/uniform source. std::normal_distribution is
/// implementation-defined, so the normal variates are generated explicitly.
class RandomStream {
 public:
  explicit RandomStream(RngSeed seed) : engine_(seed.value) {}

  double uniform01();   // in [0, 1)
  double normal();      // standard normal, Box-Muller
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform subset of {0, .., n-1} of the given size, sorted.
  std::vector<Index> sample_indices(Index n, Index count);

 private:
  std::mt19937_64 engine_;
};

/// Full column rank analysis operator with its cached pseudo-inverse
/// dictionary and the nullspace basis of that dictionary.
class AnalysisOperator {
 public:
  /// Throws std::invalid_argument if omega is not full column rank.
  explicit AnalysisOperator(Matrix omega);

  const Matrix& omega() const { return omega_; }
  const Matrix& dict() const { return dict_; }
  /// Orthonormal rows spanning the nullspace of dict(); (N - d) x N.
  const Matrix& null_proj() const { return null_proj_; }

  Index n_rows() const { return omega_.rows(); }
  Index dim() const { return omega_.cols(); }

 private:
  Matrix omega_;      // N x d
  Matrix dict_;       // d x N, pseudo_inverse(omega_)
  Matrix null_proj_;  // (N - d) x N
};

struct Cosupport {
  std::vector<Index> indices;  // sorted, distinct, in [0, N)

  Index size() const { return static_cast<Index>(indices.size()); }
  bool operator==(const Cosupport&) const = default;
};

struct CosparseInstance {
  Vector x;             // length d, unit norm
  Cosupport cosupport;  // size l
  Matrix m_mat;         // m x d
  Vector y;             // m_mat * x
  double delta = 0;     // m / d
  double rho = 0;       // (d - l) / m
  std::uint64_t seed = 0;
};

/// Random operator whose transpose is a tight frame: n_rows x dim with
/// orthonormal columns, from QR of an i.i.d. standard-normal matrix.
AnalysisOperator generate_tight_frame(Index n_rows, Index dim, RngSeed seed);

/// Unit-norm signal orthogonal to exactly the cosupport rows of the
/// operator: random cosupport of size l, Gaussian vector projected onto the
/// nullspace of the cosupport rows. Redraws if the cosupport rows span the
/// whole space or an off-cosupport row lands within 1e-8 of orthogonal.
/// Throws std::invalid_argument for l > dim, std::runtime_error if every
/// redraw fails.
std::pair<Vector, Cosupport> generate_cosparse_signal(
    const AnalysisOperator& op, Index l, RngSeed seed);

/// m x dim matrix of i.i.d. standard-normal entries with unit-norm columns.
Matrix generate_measurement_matrix(Index m, Index dim, RngSeed seed);

/// Composes the generators for a (delta, rho) grid cell: m = round(delta*d),
/// l = d - round(rho*m), fresh measurement matrix, y = M x.
CosparseInstance make_instance(const AnalysisOperator& op, double delta,
                               double rho, RngSeed seed);

}  // namespace absrec
