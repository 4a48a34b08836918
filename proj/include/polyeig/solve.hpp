#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyeig/core.hpp"
#include "polyeig/scalar_solver.hpp"

namespace polyeig {

enum class EigenKind { Zero, Finite, Infinite };

std::string to_string(EigenKind k);

// One computed eigenpair.  lambda is 0 for Zero results and +infinity for
// Infinite ones; x and y are unit right/left vectors; berr is the
// right-eigenpair backward error and cond the normwise condition number
// (the angle formula ||x|| ||y|| / |y* x| for Zero/Infinite).
struct EigenResult {
  EigenKind kind = EigenKind::Finite;
  cd lambda{0.0, 0.0};
  Vector x;
  Vector y;
  double berr = 0.0;
  double cond = 0.0;
  bool cond_unreliable = false;
  StopReason status = StopReason::Criterion1;
  int iterations = 0;
};

struct SolveOptions {
  int max_iterations = 60;
  std::uint64_t seed = 1;
};

// Structure-dispatched driver: scalar problems run the scalar engine,
// Hessenberg and tridiagonal ones the structured engine, everything else the
// dense engine.  Always returns exactly n*d results.
std::vector<EigenResult> solve(const MatrixPolynomial& p, const SolveOptions& opts = {});

}  // namespace polyeig
