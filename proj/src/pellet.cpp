#include "polyeig/pellet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyeig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log( sum_i exp(logs[i] + slopes[i]*t) ), stable against over/underflow.
double log_sum_exp(const std::vector<double>& logs,
                   const std::vector<double>& slopes, double t) {
  double m = -kInf;
  for (std::size_t i = 0; i < logs.size(); ++i)
    m = std::max(m, logs[i] + slopes[i] * t);
  double s = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i)
    s += std::exp(logs[i] + slopes[i] * t - m);
  return m + std::log(s);
}

// Solves sum_i w_i mu^{p_i} = c for mu > 0, where every exponent p_i is
// strictly positive (increasing case) or strictly negative (decreasing
// case), so the log-space objective is strictly monotone in t = log(mu).
double solve_monotone(const std::vector<double>& logs,
                      const std::vector<double>& slopes, double log_c) {
  auto f = [&](double t) { return log_sum_exp(logs, slopes, t) - log_c; };
  const bool increasing = slopes.front() > 0.0;

  double lo = 0.0, hi = 0.0;
  double f0 = f(0.0);
  if ((f0 < 0.0) == increasing) {
    // need larger t
    double step = 1.0;
    hi = step;
    while ((f(hi) < 0.0) == increasing && hi < 4096.0) hi += (step *= 2.0);
  } else {
    double step = 1.0;
    lo = -step;
    while ((f(lo) > 0.0) == increasing && lo > -4096.0) lo -= (step *= 2.0);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

PelletBounds pellet_bounds(const std::vector<double>& weights,
                           const EndpointSingularValues& ends) {
  if (weights.size() < 2)
    throw std::invalid_argument("pellet_bounds: need degree >= 1");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("pellet_bounds: weights must be finite and nonnegative");
  if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; }))
    throw std::invalid_argument("pellet_bounds: all weights zero");

  const int d = static_cast<int>(weights.size()) - 1;
  PelletBounds out;

  // Lower bound: sigma_min(A_0) = sum_{i=1..d} w_i mu^i, increasing in mu.
  if (!ends.a0_invertible || ends.a0_sigma_min <= 0.0) {
    out.lower = 0.0;
  } else {
    std::vector<double> logs, slopes;
    for (int i = 1; i <= d; ++i)
      if (weights[i] > 0.0) {
        logs.push_back(std::log(weights[i]));
        slopes.push_back(static_cast<double>(i));
      }
    out.lower = logs.empty()
                    ? kInf  // unreachable for a valid polynomial (w_d > 0)
                    : solve_monotone(logs, slopes, std::log(ends.a0_sigma_min));
  }

  // Upper bound: sigma_min(A_d) = sum_{i=0..d-1} w_i mu^{i-d}, decreasing.
  if (!ends.ad_invertible || ends.ad_sigma_min <= 0.0) {
    out.upper = kInf;
  } else {
    std::vector<double> logs, slopes;
    for (int i = 0; i < d; ++i)
      if (weights[i] > 0.0) {
        logs.push_back(std::log(weights[i]));
        slopes.push_back(static_cast<double>(i - d));
      }
    // All trailing weights zero: P(lambda) = lambda^d A_d, every eigenvalue 0.
    out.upper = logs.empty()
                    ? 0.0
                    : solve_monotone(logs, slopes, std::log(ends.ad_sigma_min));
  }
  return out;
}

}  // namespace polyeig
