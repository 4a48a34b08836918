#pragma once

#include <optional>
#include <vector>

#include "polyeig/pivoted_qr.hpp"
#include "polyeig/solve.hpp"

namespace polyeig {

// Determinant data of a Hessenberg matrix polynomial at one point: with
// q = prod of the subdiagonal entries, det P = (-1)^(n-1) b q, where b and
// its derivatives b1, b2 come from three structured back-substitutions and
// the q ratios are sums over the subdiagonal entries.
struct HymanValues {
  cd b{0.0, 0.0};
  cd b1{0.0, 0.0};
  cd b2{0.0, 0.0};
  cd q_ratio1{0.0, 0.0};  // q'/q
  cd q_ratio2{0.0, 0.0};  // q''/q
  Vector x_work, x1_work, x2_work;  // the three length-(n-1) solutions
};

// Evaluate the recurrences at z.  With at_reversal every entry polynomial is
// replaced by its reversal and z is interpreted as rho.  Subdiagonal values
// of magnitude below eps are replaced by eps before any division (an exactly
// singular evaluation point then shows up as b = 0 instead of a crash).
// O(d n^2) for Hessenberg structure, O(d n) when the tag is tridiagonal.
HymanValues hyman_eval(const MatrixPolynomial& p, cd z, bool at_reversal);

// Laguerre sums in the lambda frame; the branch is chosen by |lambda| like
// everywhere else, so v must hold reversal values at rho = 1/lambda whenever
// |lambda| > 1.  nd_total = n * degree.  nullopt when b = 0 exactly: the
// determinant vanished at the evaluation point and the caller should treat
// the iterate as converged.
std::optional<LaguerreSums> laguerre_correction_hyman(const HymanValues& v,
                                                      int nd_total, cd lambda);

// Givens QR of a Hessenberg matrix: exactly n-1 rotations, perm = identity,
// so Q comes out upper Hessenberg.  O(n^2).
QRPFactors hessenberg_qr(const Matrix& m);

// Eigenvectors through the split triangular solves around diagonal entry
// j_min (0-based): x from the leading block with x(j_min) = 1, y = Q yhat
// with yhat from the conjugate-transposed trailing block and yhat(j_min) = 1.
// nullopt when a block is exactly singular or a solve blows up.
std::optional<EigenvectorPair> eigenvectors_hessenberg(const QRPFactors& f,
                                                       int j_min);

// Laguerre driver for Hessenberg and tridiagonal problems.  Hessenberg
// iterates cost O(d n^2) (dense Q, Hyman corrections); tridiagonal ones stay
// O(d n) end to end: band evaluation, rotation-form QR (Q never
// materialized), banded substitutions and banded inverse iteration.
std::vector<EigenResult> solve_structured(const MatrixPolynomial& p,
                                          const SolveOptions& opts = {});

}  // namespace polyeig
