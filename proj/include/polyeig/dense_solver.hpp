#pragma once

#include <optional>

#include "polyeig/pivoted_qr.hpp"
#include "polyeig/solve.hpp"

namespace polyeig {

// Laguerre sums s1 = p'/p and s2 = -(p'/p)' of p(l) = det P(l) at lambda,
// by trace formulas through an existing factorization f of P(lambda)
// (direct) or of rP(1/lambda) (f.at_reversal): two multi-column triangular
// solves, with the diagonal of X1^2 formed as row-by-column dot products.
// Values are reported in the lambda frame on both branches.  nullopt when
// some r_jj is exactly zero (the stopping tests fire there first).
std::optional<LaguerreSums> laguerre_correction_dense(const MatrixPolynomial& p,
                                                      cd lambda, const QRPFactors& f);

// Residual and backward-error stopping tests against current factors.
// Criterion1: |r_nn| < alpha_scale * eps.  Criterion2: the smallest of
// ||b|| / ||M^-1 b|| over three probe vectors (normalized all-ones, the
// seeded probe, the last Q column) falls below alpha_scale * eps.
std::optional<StopReason> check_stop(const QRPFactors& f, double alpha_scale,
                                     const Vector& probe);

// General-structure engine: per finite estimate, factor P(lambda) (or the
// reversal beyond the unit circle) with column pivoting, test the stopping
// criteria, take deflated Laguerre steps; zero/infinite pairs are emitted
// from the rank decisions up front.
std::vector<EigenResult> solve_dense(const MatrixPolynomial& p,
                                     const SolveOptions& opts = {});

}  // namespace polyeig
