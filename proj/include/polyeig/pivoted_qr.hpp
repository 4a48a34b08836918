#pragma once

#include <optional>
#include <vector>

#include "polyeig/core.hpp"

namespace polyeig {

// Householder QR with greedy column pivoting: Q R = M E with
// |r_11| >= |r_22| >= ... >= |r_nn| and (M E)(:, j) = M(:, perm[j]).
struct QRPFactors {
  Matrix q;
  Matrix r;
  std::vector<int> perm;
  bool at_reversal = false;

  int n() const { return static_cast<int>(perm.size()); }
};

QRPFactors qr_col_pivot(const Matrix& m);

// Overflow-safe plane rotation: [c, s; -conj(s), c] [a; b] = [r; 0] with
// real c, computed through hypot of the moduli.
void complex_givens(cd a, cd b, double* c, cd* s, cd* r);

// x = E xhat (scatter into original column positions) and xhat = E^T x.
Vector permute_scatter(const std::vector<int>& perm, const Vector& xhat);
Vector permute_gather(const std::vector<int>& perm, const Vector& x);

// Triangular substitution R x = b / R* x = b.  Zero diagonal entries are
// replaced by eps*|r_11| (scale-relative) so the sweep stays finite; callers
// that must distinguish exact singularity test the diagonal themselves.
Vector solve_upper(const Matrix& r, const Vector& b);
Vector solve_upper_adjoint(const Matrix& r, const Vector& b);

// M x = b and M* x = b through the existing factors.
Vector solve_through(const QRPFactors& f, const Vector& b);
Vector solve_adjoint_through(const QRPFactors& f, const Vector& b);

// Null-direction recovery once the trailing pivot is negligible: xhat from
// the leading (n-1)x(n-1) solve with xhat(n) = 1, x = E xhat; y = Q e_n.
// nullopt when the leading block is exactly singular or the solve blows up
// (callers fall back to inverse iteration).
struct EigenvectorPair {
  Vector x;
  Vector y;
};
std::optional<EigenvectorPair> eigenvectors_from_factors(const QRPFactors& f);

// Inverse iteration on E(R*R)E^T and Q(RR*)Q* for the smallest singular
// pair, seeded from the triangular-solve directions; each step is two
// substitution sweeps through the existing factors.
struct SingularVectors {
  Vector x;
  Vector y;
  double sigma = 0.0;  // ||M x||_2 evaluated through the factors
  bool converged = true;
};
SingularVectors singular_vectors(const QRPFactors& f);

}  // namespace polyeig
