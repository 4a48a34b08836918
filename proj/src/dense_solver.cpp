#include "polyeig/dense_solver.hpp"

#include <cmath>

#include "engine_common.hpp"

namespace polyeig {
namespace {

// X with M X = B through QR = ME: X = E R^-1 Q* B.  Diagonal checked
// nonzero by the caller.
Matrix solve_matrix_through(const QRPFactors& f, const Matrix& b) {
  Matrix t = f.q.adjoint() * b;
  f.r.triangularView<Eigen::Upper>().solveInPlace(t);
  Matrix x(t.rows(), t.cols());
  for (int j = 0; j < f.n(); ++j) x.row(f.perm[static_cast<size_t>(j)]) = t.row(j);
  return x;
}

std::optional<LaguerreSums> correction_from_triple(const EvalTriple& ev, cd lambda,
                                                   const QRPFactors& f, int nd) {
  const int n = f.n();
  for (int j = 0; j < n; ++j)
    if (f.r(j, j) == cd(0.0, 0.0)) return std::nullopt;

  const Matrix x1 = solve_matrix_through(f, ev.d1);
  const Matrix x2 = solve_matrix_through(f, ev.d2);
  cd tr1(0.0, 0.0), tr2(0.0, 0.0), diag_sq(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    tr1 += x1(i, i);
    tr2 += x2(i, i);
    diag_sq += (x1.row(i) * x1.col(i)).value();  // (X1^2)(i,i) only
  }

  LaguerreSums s;
  if (!f.at_reversal) {
    s.s1 = tr1;
    s.s2 = diag_sq - tr2;
  } else {
    // rho-frame traces mapped back through p'(l)/p(l) = rho (nd - rho r'/r).
    const cd rho = cd(1.0, 0.0) / lambda;
    const cd total(static_cast<double>(nd), 0.0);
    s.s1 = rho * (total - rho * tr1);
    s.s2 = rho * rho * (total - 2.0 * rho * tr1 + rho * rho * (diag_sq - tr2));
  }
  return s;
}

}  // namespace

std::optional<LaguerreSums> laguerre_correction_dense(const MatrixPolynomial& p,
                                                      cd lambda, const QRPFactors& f) {
  const EvalTriple ev = f.at_reversal ? eval_reversal(p, cd(1.0, 0.0) / lambda)
                                      : eval_with_derivatives(p, lambda);
  return correction_from_triple(ev, lambda, f, p.n() * p.degree());
}

std::optional<StopReason> check_stop(const QRPFactors& f, double alpha_scale,
                                     const Vector& probe) {
  const int n = f.n();
  const double tau = alpha_scale * eps;
  if (std::abs(f.r(n - 1, n - 1)) < tau) return StopReason::Criterion1;

  Vector ones = Vector::Ones(n);
  normalize_in_place(ones);
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& b : {ones, probe, Vector(f.q.col(n - 1))}) {
    const double zn = solve_through(f, b).stableNorm();
    if (zn > 0.0) best = std::min(best, b.stableNorm() / zn);
  }
  if (best < tau) return StopReason::Criterion2;
  return std::nullopt;
}

namespace {

class DenseEngine {
 public:
  explicit DenseEngine(const MatrixPolynomial& p)
      : p_(p), w_(coefficient_weights(p)) {}

  void factor(cd lambda) {
    if (std::abs(lambda) <= 1.0) {
      ev_ = eval_with_derivatives(p_, lambda);
      f_ = qr_col_pivot(ev_.value);
      scale_ = w_.alpha(std::abs(lambda));
    } else {
      const cd rho = cd(1.0, 0.0) / lambda;
      ev_ = eval_reversal(p_, rho);
      f_ = qr_col_pivot(ev_.value);
      f_.at_reversal = true;
      scale_ = w_.alpha_rev(std::abs(rho));
    }
  }

  double alpha_scale() const { return scale_; }

  std::optional<StopReason> stopping(double scale, const Vector& probe) const {
    return check_stop(f_, scale, probe);
  }

  std::optional<LaguerreSums> correction(cd lambda) const {
    return correction_from_triple(ev_, lambda, f_, p_.n() * p_.degree());
  }

  std::pair<Vector, Vector> vectors(StopReason status) const {
    if (status == StopReason::Criterion1) {
      if (auto pair = eigenvectors_from_factors(f_)) return {pair->x, pair->y};
    }
    const SingularVectors sv = singular_vectors(f_);
    return {sv.x, sv.y};
  }

  ErrorReport report(cd lambda, const Vector& x, const Vector& y) const {
    return error_report(p_, lambda, x, y, w_);
  }

 private:
  const MatrixPolynomial& p_;
  CoefficientWeights w_;
  EvalTriple ev_;
  QRPFactors f_;
  double scale_ = 0.0;
};

}  // namespace

std::vector<EigenResult> solve_dense(const MatrixPolynomial& p, const SolveOptions& opts) {
  const EstimateSet est = initial_estimates(p);
  DenseEngine eng(p);
  return detail::run_laguerre(p, eng, est, opts);
}

}  // namespace polyeig
