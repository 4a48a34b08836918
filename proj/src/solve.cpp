#include "polyeig/solve.hpp"

#include "polyeig/dense_solver.hpp"
#include "polyeig/hyman.hpp"
#include "polyeig/metrics.hpp"

namespace polyeig {

std::string to_string(EigenKind k) {
  switch (k) {
    case EigenKind::Zero: return "zero";
    case EigenKind::Finite: return "finite";
    case EigenKind::Infinite: return "infinite";
  }
  return "finite";
}

namespace {

// n = 1 problems run the scalar engine and get their metrics from the same
// formulas as the matrix paths (x = y = [1]).
std::vector<EigenResult> solve_scalar_problem(const MatrixPolynomial& p,
                                              const SolveOptions& opts) {
  std::vector<cd> coeffs;
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(p.coeff(i)(0, 0));
  const ScalarPolynomial w{std::move(coeffs)};
  const ScalarSolveReport report = solve_scalar(w, opts.max_iterations, opts.seed);

  const CoefficientWeights cw = coefficient_weights(p);
  const Vector one = Vector::Ones(1);
  std::vector<EigenResult> out;
  for (const ScalarRoot& root : report.roots) {
    const ErrorReport er = error_report(p, root.value, one, one, cw);
    EigenResult res;
    res.kind = root.value == cd(0.0, 0.0) ? EigenKind::Zero : EigenKind::Finite;
    res.lambda = root.value;
    res.x = one;
    res.y = one;
    res.berr = er.eta_right;
    res.cond = er.kappa;
    res.cond_unreliable = er.kappa_unreliable;
    res.status = root.status;
    res.iterations = root.iterations;
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace

std::vector<EigenResult> solve(const MatrixPolynomial& p, const SolveOptions& opts) {
  if (p.n() == 1) return solve_scalar_problem(p, opts);
  switch (p.structure()) {
    case Structure::Hessenberg:
    case Structure::Tridiagonal:
      return solve_structured(p, opts);
    default:
      return solve_dense(p, opts);
  }
}

}  // namespace polyeig
