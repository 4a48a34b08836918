#pragma once

// Shared internals of the dense and structured Laguerre drivers: the guarded
// step, deflation arithmetic, emission of the zero/infinite pairs found
// during preparation, and the per-estimate iteration loop.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <utility>

#include "polyeig/metrics.hpp"
#include "polyeig/prep.hpp"
#include "polyeig/solve.hpp"

namespace polyeig {
namespace detail {

inline bool finite_cd(cd z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Subtract the already-found roots (and the zero eigenvalues, treated as
// found roots at the origin) from the Laguerre sums; reciprocals first so the
// squared terms never overflow prematurely.
inline void deflate_sums(LaguerreSums& s, cd lambda, const std::vector<cd>& found,
                         int zeros) {
  for (cd r : found) {
    const cd t = cd(1.0, 0.0) / (lambda - r);
    s.s1 -= t;
    s.s2 -= t * t;
  }
  if (zeros > 0) {
    const cd t = cd(1.0, 0.0) / lambda;
    const double m = static_cast<double>(zeros);
    s.s1 -= m * t;
    s.s2 -= m * t * t;
  }
}

// The proposed iterate plus the unrounded step size the stagnation test
// compares.  nullopt rejects the step: non-finite sums, a denominator within
// roundoff of s1 (cancellation between s1 and the square root), or a
// non-finite result; the caller perturbs lambda and spends an iteration.
struct StepProposal {
  cd next;
  double step;
};

inline std::optional<StepProposal> guarded_step(const LaguerreSums& s, cd lambda,
                                                int remaining) {
  if (!finite_cd(s.s1) || !finite_cd(s.s2)) return std::nullopt;
  const cd nn(static_cast<double>(remaining), 0.0);
  const cd disc = (nn - 1.0) * (nn * s.s2 - s.s1 * s.s1);
  const cd root = std::sqrt(disc);
  const cd den_plus = s.s1 + root;
  const cd den_minus = s.s1 - root;
  const cd den = std::abs(den_plus) >= std::abs(den_minus) ? den_plus : den_minus;
  if (!(std::abs(den) > eps * std::abs(s.s1))) return std::nullopt;
  const cd correction = nn / den;
  const cd next = lambda - correction;
  if (!finite_cd(next)) return std::nullopt;
  return StepProposal{next, std::abs(correction)};
}

inline EigenResult assemble(EigenKind kind, cd lambda, Vector x, Vector y,
                            const ErrorReport& er, StopReason status,
                            int iterations) {
  EigenResult res;
  res.kind = kind;
  res.lambda = lambda;
  res.x = std::move(x);
  res.y = std::move(y);
  res.berr = er.eta_right;
  res.cond = er.kappa;
  res.cond_unreliable = er.kappa_unreliable;
  res.status = status;
  res.iterations = iterations;
  return res;
}

// Zero and infinite eigenpairs come straight out of the rank decisions.
inline void emit_singular_ends(const MatrixPolynomial& p, const CoefficientWeights& w,
                               const EstimateSet& est, std::vector<EigenResult>& out) {
  const cd inf_lambda(std::numeric_limits<double>::infinity(), 0.0);
  for (int k = 0; k < est.zero_multiplicity; ++k) {
    Vector x = est.zero_right.col(k);
    Vector y = est.zero_left.col(k);
    normalize_in_place(x);
    normalize_in_place(y);
    const ErrorReport er = error_report(p, cd(0.0, 0.0), x, y, w);
    out.push_back(assemble(EigenKind::Zero, cd(0.0, 0.0), std::move(x),
                           std::move(y), er, StopReason::Criterion1, 0));
  }
  for (int k = 0; k < est.infinite_multiplicity; ++k) {
    Vector x = est.inf_right.col(k);
    Vector y = est.inf_left.col(k);
    normalize_in_place(x);
    normalize_in_place(y);
    const ErrorReport er = error_report(p, inf_lambda, x, y, w);
    out.push_back(assemble(EigenKind::Infinite, inf_lambda, std::move(x),
                           std::move(y), er, StopReason::Criterion1, 0));
  }
}

// The per-estimate Laguerre loop, shared by the engines.  An engine exposes
//   void factor(cd lambda)                     evaluate + factor at lambda
//   double alpha_scale() const                 weight of the current branch
//   std::optional<StopReason> stopping(double scale, const Vector& probe)
//   std::optional<LaguerreSums> correction(cd lambda)   undeflated, lambda frame
//   std::pair<Vector, Vector> vectors(StopReason status)
//   ErrorReport report(cd lambda, const Vector& x, const Vector& y)
template <typename Engine>
std::vector<EigenResult> run_laguerre(const MatrixPolynomial& p, Engine& eng,
                                      const EstimateSet& est, const SolveOptions& opts) {
  const CoefficientWeights w = coefficient_weights(p);
  std::vector<EigenResult> out;
  out.reserve(static_cast<size_t>(p.n()) * static_cast<size_t>(p.degree()));
  emit_singular_ends(p, w, est, out);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector probe(p.n());
  for (int i = 0; i < p.n(); ++i) probe(i) = cd(gauss(rng), gauss(rng));
  normalize_in_place(probe);

  const int n1 = p.n() * p.degree() - est.infinite_multiplicity;
  std::vector<cd> found;
  for (cd start : est.finite_estimates) {
    cd lambda = start;
    StopReason status = StopReason::MaxIter;
    int iters = 0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
      iters = it;
      eng.factor(lambda);
      const double scale = eng.alpha_scale();
      if (auto stop = eng.stopping(scale, probe)) {
        status = *stop;
        break;
      }
      auto sums = eng.correction(lambda);
      if (!sums) {  // exactly singular factorization: residual test territory
        status = StopReason::Criterion1;
        break;
      }
      deflate_sums(*sums, lambda, found, est.zero_multiplicity);
      const int remaining =
          std::max(1, n1 - est.zero_multiplicity - static_cast<int>(found.size()));
      const auto prop = guarded_step(*sums, lambda, remaining);
      if (!prop) {
        lambda *= cd(1.0, 0.0) + 1e-3 * std::polar(1.0, angle(rng));
        continue;
      }
      if (prop->step < eps * std::abs(lambda)) {
        lambda = prop->next;
        status = StopReason::Criterion3;
        break;
      }
      lambda = prop->next;
    }
    // Criterion 3 / MaxIter leave the factors one step behind the iterate.
    if (status == StopReason::Criterion3 || status == StopReason::MaxIter)
      eng.factor(lambda);
    auto [x, y] = eng.vectors(status);
    const ErrorReport er = eng.report(lambda, x, y);
    out.push_back(assemble(EigenKind::Finite, lambda, std::move(x), std::move(y),
                           er, status, iters));
    // Deflate every processed estimate, converged or not: each emitted
    // approximation claims one of the nd slots, and leaving a stalled one
    // undeflated lets later estimates pile onto the same eigenvalue while its
    // neighbors go unfound.
    found.push_back(lambda);
  }
  return out;
}

}  // namespace detail
}  // namespace polyeig
