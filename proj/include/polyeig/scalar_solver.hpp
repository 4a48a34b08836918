#pragma once

#include <cstdint>
#include <optional>

#include "polyeig/core.hpp"

namespace polyeig {

// How an individual root (or eigenvalue) run ended.
//   Criterion1: weighted residual under the alpha*eps threshold
//   Criterion2: backward-error upper bound below eps (matrix engines only)
//   Criterion3: step stagnation |next - current| < eps |current|
//   MaxIter:    iteration budget exhausted
enum class StopReason { Criterion1, Criterion2, Criterion3, MaxIter };

std::string to_string(StopReason r);

inline bool converged(StopReason r) { return r != StopReason::MaxIter; }

// Upper convex hull of (i, log|a_i|) over the nonzero coefficients.
// vertex_index = k_0 < ... < k_q with k_q = degree; radius[i-1] belongs to the
// segment (k_{i-1}, k_i) and the radii are strictly increasing.
struct NewtonPolygon {
  std::vector<int> vertex_index;
  std::vector<double> radius;
};

NewtonPolygon newton_polygon(const ScalarPolynomial& w);

// k_i - k_{i-1} points on each circle |z| = r_i, equispaced with a fixed
// angular offset so estimates avoid the real axis.
std::vector<cd> initial_estimates_scalar(const NewtonPolygon& np, double phase = 0.7);

struct LaguerreSums {
  cd s1;  // p'/p minus deflation terms
  cd s2;  // -(p'/p)' minus deflation terms
};

// Deflated sums at lambda; moduli above one are evaluated through the
// reversal at rho = 1/lambda.
LaguerreSums laguerre_sums_scalar(const ScalarPolynomial& w, cd lambda,
                                  const std::vector<cd>& deflated);

// One Laguerre step with remaining-root count N; the square-root branch with
// the larger denominator is taken.  nullopt = rejected (zero or non-finite
// denominator); the caller perturbs lambda and retries.
std::optional<cd> laguerre_step_scalar(const ScalarPolynomial& w, cd lambda,
                                       const std::vector<cd>& deflated, int remaining);

struct ScalarRoot {
  cd value;
  StopReason status;
  int iterations;
};

struct ScalarSolveReport {
  std::vector<ScalarRoot> roots;    // all degree() roots, zeros first
  long total_iterations = 0;
  int nonfinite_events = 0;         // guarded non-finite intermediates
  bool used_reversal = false;       // some iterate was evaluated at |lambda| > 1
};

ScalarSolveReport solve_scalar(const ScalarPolynomial& w, int max_iter = 60,
                               uint64_t seed = 1);

}  // namespace polyeig
