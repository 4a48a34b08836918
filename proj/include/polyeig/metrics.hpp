#pragma once

#include <utility>

#include "polyeig/core.hpp"

namespace polyeig {

// Backward error and condition number attached to one eigenpair.
struct ErrorReport {
  double eta_right = 0.0;
  double eta_left = 0.0;
  double kappa = 0.0;
  bool kappa_unreliable = false;
};

// Normwise backward errors ||P(l)x|| / (alpha ||x||) and ||P(l)* y|| / (alpha ||y||)
// with the Frobenius coefficient weights; moduli above one are evaluated through
// the reversal at rho = 1/l (infinite eigenvalues take rho = 0).
std::pair<double, double> backward_error(const MatrixPolynomial& p, cd lambda,
                                         const Vector& x, const Vector& y,
                                         const CoefficientWeights& w);

// Normwise condition number of a simple eigenvalue.  Finite nonzero:
// alpha ||x|| ||y|| / (|l| |y* P'(l) x|), computed through the reversal as
// ralpha ||x|| ||y|| / |y* (d rP(rho) - rho rP'(rho)) x| above modulus one
// (the two agree exactly).  Zero and infinite: ||x|| ||y|| / |y* x|.  A
// denominator below roundoff of the numerator scale makes the value
// untrustworthy: `unreliable` (when non-null) receives true and the result
// saturates at 1/eps so it stays finite.
double condition_number(const MatrixPolynomial& p, cd lambda, const Vector& x,
                        const Vector& y, const CoefficientWeights& w,
                        bool* unreliable = nullptr);

ErrorReport error_report(const MatrixPolynomial& p, cd lambda, const Vector& x,
                         const Vector& y, const CoefficientWeights& w);

}  // namespace polyeig
