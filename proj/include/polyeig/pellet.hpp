#pragma once

#include <limits>
#include <vector>

namespace polyeig {

// Annulus lower <= |lambda| <= upper containing every finite nonzero
// eigenvalue modulus.  lower == 0 when the constant coefficient is singular
// (zero eigenvalues exist), upper == +inf when the leading coefficient is
// singular (infinite eigenvalues exist).
struct PelletBounds {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

// Smallest singular values of the two end coefficients, plus the rank
// decision made for each (a coefficient may be numerically singular with a
// tiny positive sigma_min; the flag is what counts).
struct EndpointSingularValues {
  bool a0_invertible = true;
  double a0_sigma_min = 0.0;
  bool ad_invertible = true;
  double ad_sigma_min = 0.0;
};

// weights[i] is a norm of coefficient i (d+1 entries, all nonnegative, not
// all zero).  The lower bound solves  sigma_min(A_0) = sum_{i>=1} w_i mu^i,
// the upper bound solves  sigma_min(A_d) mu^d = sum_{i<d} w_i mu^i; both
// one-sided equations have a unique positive root found by bisection on
// log(mu) with log-sum-exp evaluation, so weight ratios spanning 1e+-300
// stay representable.
PelletBounds pellet_bounds(const std::vector<double>& weights,
                           const EndpointSingularValues& ends);

}  // namespace polyeig
