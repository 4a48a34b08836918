#include "polyeig/metrics.hpp"

#include <cmath>

namespace polyeig {
namespace {

bool finite_value(cd z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double scaled_residual(const Vector& r, double scale, double vn) {
  const double rn = r.stableNorm();
  if (rn == 0.0) return 0.0;  // exact annihilation, even when scale underflows
  return rn / (scale * vn);
}

}  // namespace

std::pair<double, double> backward_error(const MatrixPolynomial& p, cd lambda,
                                         const Vector& x, const Vector& y,
                                         const CoefficientWeights& w) {
  const double xn = x.stableNorm();
  const double yn = y.stableNorm();
  Matrix value;
  double scale;
  if (finite_value(lambda) && std::abs(lambda) <= 1.0) {
    value = eval_with_derivatives(p, lambda).value;
    scale = w.alpha(std::abs(lambda));
  } else {
    const cd rho = finite_value(lambda) ? cd(1.0, 0.0) / lambda : cd(0.0, 0.0);
    value = eval_reversal(p, rho).value;
    scale = w.alpha_rev(std::abs(rho));
  }
  return {scaled_residual(value * x, scale, xn),
          scaled_residual(value.adjoint() * y, scale, yn)};
}

double condition_number(const MatrixPolynomial& p, cd lambda, const Vector& x,
                        const Vector& y, const CoefficientWeights& w,
                        bool* unreliable) {
  const double xn = x.stableNorm();
  const double yn = y.stableNorm();
  double numerator, denominator;
  if (!finite_value(lambda) || lambda == cd(0.0, 0.0)) {
    numerator = xn * yn;
    denominator = std::abs(y.dot(x));
  } else if (std::abs(lambda) <= 1.0) {
    const EvalTriple ev = eval_with_derivatives(p, lambda);
    numerator = w.alpha(std::abs(lambda)) * xn * yn;
    denominator = std::abs(lambda) * std::abs(y.dot(ev.d1 * x));
  } else {
    const cd rho = cd(1.0, 0.0) / lambda;
    const EvalTriple ev = eval_reversal(p, rho);
    const Matrix mix =
        static_cast<double>(p.degree()) * ev.value - rho * ev.d1;
    numerator = w.alpha_rev(std::abs(rho)) * xn * yn;
    denominator = std::abs(y.dot(mix * x));
  }
  const bool bad = !(denominator > eps * numerator);  // also catches NaN
  if (unreliable != nullptr) *unreliable = bad;
  if (bad) return 1.0 / eps;
  return numerator / denominator;
}

ErrorReport error_report(const MatrixPolynomial& p, cd lambda, const Vector& x,
                         const Vector& y, const CoefficientWeights& w) {
  ErrorReport rep;
  std::tie(rep.eta_right, rep.eta_left) = backward_error(p, lambda, x, y, w);
  rep.kappa = condition_number(p, lambda, x, y, w, &rep.kappa_unreliable);
  return rep;
}

}  // namespace polyeig
