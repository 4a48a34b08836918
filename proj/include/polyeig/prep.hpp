#pragma once

#include <vector>

#include "polyeig/core.hpp"

namespace polyeig {

// Rank decision plus null-space bases of one coefficient matrix.
struct RankReveal {
  int rank = 0;       // k1; null-space dimension is n - k1
  Matrix right_null;  // n x k2, unit columns, ||A x_j|| small
  Matrix left_null;   // n x k2, unit columns, ||y_j* A|| small
  Matrix q_columns;   // the unitary factor of the factorization
};

// Default rank tolerance n * eps * ||A||_F.
double default_rank_tol(const Matrix& a);

// Column-pivoted Householder QR: rank = count of |r_jj| > tol, right null
// vectors from the leading triangular solve with unit-pivot padding, left
// null vectors = trailing columns of Q.  tol <= 0 selects the default.
RankReveal rank_reveal(const Matrix& a, double tol = -1.0);

// Unpivoted plane-rotation QR of a tridiagonal matrix (banded R, bandwidth
// 3), pivots identified one row at a time against the previous pivot column;
// null bases from the non-pivot columns / pivotless rows.  O(n^2) total.
RankReveal tridiagonal_pivot_scan(const Matrix& a, double tol = -1.0);

// Zero/infinite multiplicities with eigenvector bases, plus initial
// estimates for the finite eigenvalues from roots of the quadratic forms
// q_j* P(lambda) q_j over the leading coefficient's Q columns.
struct EstimateSet {
  int zero_multiplicity = 0;
  Matrix zero_right;  // n x zero_multiplicity
  Matrix zero_left;
  int infinite_multiplicity = 0;
  Matrix inf_right;
  Matrix inf_left;
  std::vector<cd> finite_estimates;  // exactly nd - N0 - Ninf entries
};

// Throws runtime_error("possibly non-regular ...") when every quadratic form
// is negligible or the multiplicity bookkeeping is impossible.
EstimateSet initial_estimates(const MatrixPolynomial& p);

}  // namespace polyeig
