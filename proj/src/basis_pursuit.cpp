#include <cmath>
#include <stdexcept>

#include "absrec/solvers.hpp"

namespace absrec {

namespace {

// Residual of the full primal-dual system (dual, dual box, centrality x2,
// primal), used by the backtracking line search.
double pd_residual_norm(const Vector& f1, const Vector& f2,
                        const Vector& lam1, const Vector& lam2,
                        const Vector& atv, const Vector& rpri, double t) {
  const double inv_t = 1.0 / t;
  double acc = (lam1 - lam2 + atv).squaredNorm();
  acc += (Vector::Ones(f1.size()) - lam1 - lam2).squaredNorm();
  acc += (-lam1.cwiseProduct(f1).array() - inv_t).matrix().squaredNorm();
  acc += (-lam2.cwiseProduct(f2).array() - inv_t).matrix().squaredNorm();
  acc += rpri.squaredNorm();
  return std::sqrt(acc);
}

}  // namespace

SynthesisResult basis_pursuit(const Matrix& a, const Vector& y,
                              const BpTolerances& cfg) {
  if (a.rows() != y.size()) {
    throw std::invalid_argument("basis_pursuit: dimension mismatch");
  }
  const Index m = a.rows();
  const Index n = a.cols();

  SynthesisResult out;
  out.gamma = Vector::Zero(n);
  if (y.norm() == 0.0) return out;

  // Feasible starting point: minimum-norm solution of a*x = y.
  Vector x = least_squares(a, y);
  Vector rpri = a * x - y;
  if (rpri.norm() > 1e-8 * std::max(1.0, y.norm())) {
    throw std::runtime_error(
        "basis_pursuit: y is not in the column span of a");
  }


  constexpr double kMu = 10.0;
  constexpr double kAlpha = 1e-2;
  constexpr double kBeta = 0.5;
  constexpr int kMaxLineSearch = 32;

  // LP split: minimize sum(u) with -u <= x <= u.
  const double x_max = x.cwiseAbs().maxCoeff();
  Vector u = 0.95 * x.cwiseAbs() + Vector::Constant(n, 0.10 * x_max);
  Vector f1 = x - u;   // < 0
  Vector f2 = -x - u;  // < 0
  Vector lam1 = -f1.cwiseInverse();
  Vector lam2 = -f2.cwiseInverse();
  Vector v = -a * (lam1 - lam2);
  Vector atv = a.transpose() * v;

  auto rel_gap = [&](double sdg) { return sdg / std::max(1.0, u.sum()); };

  double sdg = -f1.dot(lam1) - f2.dot(lam2);
  double t = kMu * 2.0 * static_cast<double>(n) / sdg;
  double res_norm = pd_residual_norm(f1, f2, lam1, lam2, atv, rpri, t);

  out.converged = false;
  while (out.iterations < cfg.max_newton) {
    if (rel_gap(sdg) < cfg.duality_gap) {
      out.converged = true;
      break;
    }
    ++out.iterations;
    const double inv_t = 1.0 / t;

    const Vector w1 =
        -inv_t * (-f1.cwiseInverse() + f2.cwiseInverse()) - atv;
    const Vector w2 = -Vector::Ones(n) -
                      inv_t * (f1.cwiseInverse() + f2.cwiseInverse());
    const Vector sig1 = -lam1.cwiseQuotient(f1) - lam2.cwiseQuotient(f2);
    const Vector sig2 = lam1.cwiseQuotient(f1) - lam2.cwiseQuotient(f2);
    // sig1 - sig2^2/sig1 cancels catastrophically once one of the two box
    // constraints dominates; the factored form (sig1^2 - sig2^2)/sig1
    // = 4*lam1*lam2/(f1*f2*sig1) is a product of positives and stays > 0.
    const Vector sigx = 4.0 *
                        lam1.cwiseProduct(lam2)
                            .cwiseQuotient(f1.cwiseProduct(f2))
                            .cwiseQuotient(sig1);

    // Augmented KKT system in (dx, dv). The Schur complement
    // a*diag(1/sigx)*a' squares the conditioning of sigx (which spans many
    // orders of magnitude near convergence) and loses the step long before
    // the target duality gap; the augmented form with full pivoting plus one
    // round of iterative refinement stays accurate.
    Matrix kkt = Matrix::Zero(n + m, n + m);
    kkt.topLeftCorner(n, n).diagonal() = sigx;
    kkt.topRightCorner(n, m) = a.transpose();
    kkt.bottomLeftCorner(m, n) = a;
    Vector rhs(n + m);
    rhs.head(n) = w1 - w2.cwiseProduct(sig2).cwiseQuotient(sig1);
    rhs.tail(m) = -rpri;

    const Eigen::FullPivLU<Matrix> lu(kkt);
    Vector step = lu.solve(rhs);
    step += lu.solve(rhs - kkt * step);
    if (!step.allFinite()) break;

    const Vector dx = step.head(n);
    const Vector dv = step.tail(m);
    const Vector atdv = a.transpose() * dv;
    const Vector du = (w2 - sig2.cwiseProduct(dx)).cwiseQuotient(sig1);
    const Vector dlam1 =
        lam1.cwiseQuotient(f1).cwiseProduct(du - dx) - lam1 -
        inv_t * f1.cwiseInverse();
    const Vector dlam2 =
        lam2.cwiseQuotient(f2).cwiseProduct(dx + du) - lam2 -
        inv_t * f2.cwiseInverse();

    // Largest step keeping lam >= 0 and f < 0.
    double s = 1.0;
    for (Index j = 0; j < n; ++j) {
      if (dlam1(j) < 0) s = std::min(s, -lam1(j) / dlam1(j));
      if (dlam2(j) < 0) s = std::min(s, -lam2(j) / dlam2(j));
      if (dx(j) - du(j) > 0) s = std::min(s, -f1(j) / (dx(j) - du(j)));
      if (-dx(j) - du(j) > 0) s = std::min(s, -f2(j) / (-dx(j) - du(j)));
    }
    s *= 0.99;

    const Vector adx = a * dx;
    bool accepted = false;
    Vector x_new, u_new, v_new, atv_new, lam1_new, lam2_new, f1_new, f2_new,
        rpri_new;
    for (int ls = 0; ls < kMaxLineSearch; ++ls) {
      x_new = x + s * dx;
      u_new = u + s * du;
      v_new = v + s * dv;
      atv_new = atv + s * atdv;
      lam1_new = lam1 + s * dlam1;
      lam2_new = lam2 + s * dlam2;
      f1_new = x_new - u_new;
      f2_new = -x_new - u_new;
      rpri_new = rpri + s * adx;
      const double res_new = pd_residual_norm(f1_new, f2_new, lam1_new,
                                              lam2_new, atv_new, rpri_new, t);
      if (res_new <= (1.0 - kAlpha * s) * res_norm) {
        res_norm = res_new;
        accepted = true;
        break;
      }
      s *= kBeta;
    }
    if (!accepted) break;  // stalled; return current iterate

    x = x_new;
    u = u_new;
    v = v_new;
    atv = atv_new;
    lam1 = lam1_new;
    lam2 = lam2_new;
    f1 = f1_new;
    f2 = f2_new;
    rpri = a * x - y;  // exact, not the drifting recurrence

    sdg = -f1.dot(lam1) - f2.dot(lam2);
    t = kMu * 2.0 * static_cast<double>(n) / sdg;
    res_norm = pd_residual_norm(f1, f2, lam1, lam2, atv, rpri, t);
    out.residual_norms.push_back(rpri.norm());
  }

  if (rel_gap(sdg) < cfg.duality_gap) out.converged = true;
  out.gamma = x;
  out.duality_gap = rel_gap(sdg);
  return out;
}

}  // namespace absrec
