#include "polyeig/scalar_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace polyeig {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::Criterion1: return "criterion1";
    case StopReason::Criterion2: return "criterion2";
    case StopReason::Criterion3: return "criterion3";
    case StopReason::MaxIter: return "maxiter";
  }
  return "maxiter";
}

namespace {

bool finite(cd x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

// Radii are formed from log differences so ratios like 1e300/1e-300 never
// overflow; the tiny clamp keeps estimates representable.
double radius_from_logs(double lo, double hi, int gap) {
  const double r = std::exp((lo - hi) / gap);
  return std::clamp(r, 1e-290, 1e290);
}

}  // namespace

NewtonPolygon newton_polygon(const ScalarPolynomial& w) {
  const int d = w.degree();
  if (d < 1) throw std::invalid_argument("newton polygon needs degree >= 1");
  std::vector<int> idx;
  std::vector<double> logs;
  for (int i = 0; i <= d; ++i) {
    const double m = std::abs(w.coeff(i));
    if (m != 0.0) {
      idx.push_back(i);
      logs.push_back(std::log(m));
    }
  }
  // Monotone-chain upper hull; collinear middle points are dropped.
  std::vector<int> hull;  // positions into idx/logs
  for (size_t p = 0; p < idx.size(); ++p) {
    while (hull.size() >= 2) {
      const size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      const double cross =
          (idx[b] - idx[a]) * (logs[p] - logs[a]) -
          (logs[b] - logs[a]) * (idx[p] - idx[a]);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  NewtonPolygon np;
  for (size_t h : hull) np.vertex_index.push_back(idx[h]);
  for (size_t i = 1; i < hull.size(); ++i) {
    const size_t a = hull[i - 1], b = hull[i];
    np.radius.push_back(radius_from_logs(logs[a], logs[b], idx[b] - idx[a]));
  }
  return np;
}

std::vector<cd> initial_estimates_scalar(const NewtonPolygon& np, double phase) {
  std::vector<cd> est;
  for (size_t s = 0; s < np.radius.size(); ++s) {
    const int count = np.vertex_index[s + 1] - np.vertex_index[s];
    for (int j = 0; j < count; ++j)
      est.push_back(std::polar(np.radius[s], 2.0 * M_PI * j / count + phase));
  }
  return est;
}

namespace {

// Undeflated s1 = w'/w and s2 = (w'/w)^2 - w''/w from an evaluated triple;
// above modulus one the triple comes from the reversal and the identities
//   p'/p      = rho (d - rho g1)
//   -(p'/p)'  = rho^2 (d - 2 rho g1 + rho^2 (g1^2 - g2))
// with g1 = rw'/rw, g2 = rw''/rw map the sums back.
LaguerreSums sums_from_triple(const ScalarTriple& t, int degree, cd lambda,
                              bool at_reversal) {
  LaguerreSums s;
  if (!at_reversal) {
    const cd g1 = t.d1 / t.value;
    s.s1 = g1;
    s.s2 = g1 * g1 - t.d2 / t.value;
  } else {
    const cd rho = 1.0 / lambda;
    const cd g1 = t.d1 / t.value;
    const cd u2 = g1 * g1 - t.d2 / t.value;
    const cd dd(static_cast<double>(degree), 0.0);
    s.s1 = rho * (dd - rho * g1);
    s.s2 = rho * rho * (dd - 2.0 * rho * g1 + rho * rho * u2);
  }
  return s;
}

void apply_deflation(LaguerreSums& s, cd lambda, const std::vector<cd>& deflated) {
  for (cd r : deflated) {
    const cd t = 1.0 / (lambda - r);
    s.s1 -= t;
    s.s2 -= t * t;
  }
}

// The proposed iterate and the exact step size it came from (the step is the
// quantity the stagnation test compares, before subtraction re-quantizes it).
struct Proposal {
  cd next;
  double step;
};

std::optional<Proposal> step_from_sums(const LaguerreSums& s, cd lambda,
                                       int remaining) {
  const cd nn(static_cast<double>(remaining), 0.0);
  const cd disc = (nn - 1.0) * (nn * s.s2 - s.s1 * s.s1);
  const cd root = std::sqrt(disc);
  const cd den_plus = s.s1 + root;
  const cd den_minus = s.s1 - root;
  const cd den = std::abs(den_plus) >= std::abs(den_minus) ? den_plus : den_minus;
  if (std::abs(den) == 0.0) return std::nullopt;
  const cd correction = nn / den;
  const cd next = lambda - correction;
  if (!finite(next)) return std::nullopt;
  return Proposal{next, std::abs(correction)};
}

}  // namespace

LaguerreSums laguerre_sums_scalar(const ScalarPolynomial& w, cd lambda,
                                  const std::vector<cd>& deflated) {
  const bool rev = std::abs(lambda) > 1.0;
  const ScalarTriple t = rev ? eval_reversal(w, 1.0 / lambda)
                             : eval_with_derivatives(w, lambda);
  LaguerreSums s = sums_from_triple(t, w.degree(), lambda, rev);
  apply_deflation(s, lambda, deflated);
  return s;
}

std::optional<cd> laguerre_step_scalar(const ScalarPolynomial& w, cd lambda,
                                       const std::vector<cd>& deflated,
                                       int remaining) {
  if (remaining < 1) throw std::invalid_argument("remaining root count must be >= 1");
  const auto prop =
      step_from_sums(laguerre_sums_scalar(w, lambda, deflated), lambda, remaining);
  if (!prop) return std::nullopt;
  return prop->next;
}

ScalarSolveReport solve_scalar(const ScalarPolynomial& w, int max_iter, uint64_t seed) {
  ScalarSolveReport report;
  const int d = w.degree();
  if (d < 1) return report;

  int k0 = 0;
  while (k0 <= d && w.coeff(k0) == cd(0.0)) ++k0;
  for (int i = 0; i < k0; ++i)
    report.roots.push_back({cd(0.0), StopReason::Criterion1, 0});
  if (k0 == d) return report;  // w = a_d lambda^d

  std::vector<cd> tail(w.coeffs().begin() + k0, w.coeffs().end());
  const ScalarPolynomial v{std::move(tail)};
  const int dv = v.degree();
  const CoefficientWeights cw = coefficient_weights(v);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const auto unit = [&] { return std::polar(1.0, angle(rng)); };

  const NewtonPolygon np = newton_polygon(v);
  std::vector<cd> estimates = initial_estimates_scalar(np);

  std::vector<cd> deflated;
  for (cd est : estimates) {
    cd lambda = est;
    for (cd r : deflated)
      if (std::abs(lambda - r) <= eps * std::max(1.0, std::abs(r)))
        lambda += 1e-6 * std::max(1.0, std::abs(lambda)) * unit();

    StopReason status = StopReason::MaxIter;
    int iters = 0;
    for (int it = 1; it <= max_iter; ++it) {
      iters = it;
      const bool rev = std::abs(lambda) > 1.0;
      if (rev) report.used_reversal = true;
      ScalarTriple t;
      double scale;
      try {
        if (rev) {
          const cd rho = 1.0 / lambda;
          t = eval_reversal(v, rho);
          scale = cw.alpha_rev(std::abs(rho));
        } else {
          t = eval_with_derivatives(v, lambda);
          scale = cw.alpha(std::abs(lambda));
        }
      } catch (const std::range_error&) {
        ++report.nonfinite_events;
        break;
      }
      if (std::abs(t.value) <= scale * eps) {
        status = StopReason::Criterion1;
        break;
      }
      LaguerreSums sums = sums_from_triple(t, dv, lambda, rev);
      apply_deflation(sums, lambda, deflated);
      if (!finite(sums.s1) || !finite(sums.s2)) {
        ++report.nonfinite_events;
        lambda += eps * std::max(1.0, std::abs(lambda)) * unit();
        continue;
      }
      const int remaining = dv - static_cast<int>(deflated.size());
      const auto prop = step_from_sums(sums, lambda, std::max(1, remaining));
      if (!prop) {
        lambda += eps * std::max(1.0, std::abs(lambda)) * unit();
        continue;
      }
      if (prop->step < eps * std::abs(lambda)) {
        lambda = prop->next;
        status = StopReason::Criterion3;
        break;
      }
      lambda = prop->next;
    }
    report.total_iterations += iters;
    report.roots.push_back({lambda, status, iters});
    deflated.push_back(lambda);
  }
  return report;
}

}  // namespace polyeig
