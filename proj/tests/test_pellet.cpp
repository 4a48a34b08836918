#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "polyeig/core.hpp"
#include "polyeig/pellet.hpp"

using polyeig::cd;
using polyeig::EndpointSingularValues;
using polyeig::Matrix;
using polyeig::pellet_bounds;

namespace {

EndpointSingularValues scalar_ends(const std::vector<cd>& coeffs) {
  EndpointSingularValues e;
  e.a0_sigma_min = std::abs(coeffs.front());
  e.a0_invertible = e.a0_sigma_min > 0.0;
  e.ad_sigma_min = std::abs(coeffs.back());
  e.ad_invertible = e.ad_sigma_min > 0.0;
  return e;
}

std::vector<double> scalar_weights(const std::vector<cd>& coeffs) {
  std::vector<double> w;
  for (cd a : coeffs) w.push_back(std::abs(a));
  return w;
}

// Residual of the defining equation, evaluated in log space so extreme
// weights stay representable: returns |log(sum w_i mu^{i-k}) - log(c_k)|.
double log_residual(const std::vector<double>& w, int k, double c, double mu) {
  const double t = std::log(mu);
  double m = -std::numeric_limits<double>::infinity();
  const int d = static_cast<int>(w.size()) - 1;
  for (int i = 0; i <= d; ++i)
    if (i != k && w[static_cast<size_t>(i)] > 0.0)
      m = std::max(m, std::log(w[static_cast<size_t>(i)]) + (i - k) * t);
  double s = 0.0;
  for (int i = 0; i <= d; ++i)
    if (i != k && w[static_cast<size_t>(i)] > 0.0)
      s += std::exp(std::log(w[static_cast<size_t>(i)]) + (i - k) * t - m);
  return std::abs(m + std::log(s) - std::log(c));
}

}  // namespace

TEST_CASE("linear polynomial lambda - 2 pins both bounds at 2") {
  const std::vector<cd> w{-2.0, 1.0};
  const auto b = pellet_bounds(scalar_weights(w), scalar_ends(w));
  CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b.lower <= b.upper);
}

TEST_CASE("lambda^2 - 1 pins both bounds at 1") {
  const std::vector<cd> w{-1.0, 0.0, 1.0};
  const auto b = pellet_bounds(scalar_weights(w), scalar_ends(w));
  CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random scalar polynomials: annulus contains every companion root") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 7);
    std::vector<cd> c(static_cast<size_t>(d) + 1);
    for (auto& a : c) a = cd(u(rng), u(rng));
    if (std::abs(c.front()) < 0.1) c.front() += cd(0.5, 0.0);
    if (std::abs(c.back()) < 0.1) c.back() += cd(0.5, 0.0);

    const auto b = pellet_bounds(scalar_weights(c), scalar_ends(c));
    REQUIRE(std::isfinite(b.lower));
    REQUIRE(std::isfinite(b.upper));
    CHECK(b.lower <= b.upper * (1.0 + 1e-12));
    for (cd r : oracle::companion_roots(c)) {
      CHECK(std::abs(r) * (1.0 + 1e-9) >= b.lower);
      CHECK(std::abs(r) <= b.upper * (1.0 + 1e-9));
    }
    // Each bound satisfies its defining equation.
    CHECK(log_residual(scalar_weights(c), 0, std::abs(c.front()), b.lower) < 1e-10);
    CHECK(log_residual(scalar_weights(c), d, std::abs(c.back()), b.upper) < 1e-10);
  }
}

TEST_CASE("weights spanning 1e+-300 stay finite and satisfy the equations") {
  const int d = 6;
  std::vector<double> w(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i)
    w[static_cast<size_t>(i)] = std::pow(10.0, 300.0 * std::sin(2.0 * M_PI * i / d + 0.5));
  EndpointSingularValues ends;
  ends.a0_sigma_min = w.front();
  ends.ad_sigma_min = w.back();
  const auto b = pellet_bounds(w, ends);
  REQUIRE(b.lower > 0.0);
  REQUIRE(std::isfinite(b.lower));
  REQUIRE(b.upper > 0.0);
  REQUIRE(std::isfinite(b.upper));
  CHECK(b.lower <= b.upper * (1.0 + 1e-12));
  CHECK(log_residual(w, 0, w.front(), b.lower) < 1e-9);
  CHECK(log_residual(w, d, w.back(), b.upper) < 1e-9);
}

TEST_CASE("singular end coefficients collapse the corresponding bound") {
  const std::vector<double> w{1.0, 2.0, 1.0};
  EndpointSingularValues ends;
  ends.a0_invertible = false;
  ends.a0_sigma_min = 0.0;
  ends.ad_sigma_min = 1.0;
  auto b = pellet_bounds(w, ends);
  CHECK(b.lower == 0.0);
  CHECK(std::isfinite(b.upper));

  ends.a0_invertible = true;
  ends.a0_sigma_min = 1.0;
  ends.ad_invertible = false;
  ends.ad_sigma_min = 0.0;
  b = pellet_bounds(w, ends);
  CHECK(b.lower > 0.0);
  CHECK(std::isinf(b.upper));
}

TEST_CASE("pure power polynomial has upper bound zero") {
  // P = lambda^3 (all weights below the top vanish): every eigenvalue is 0.
  const std::vector<double> w{0.0, 0.0, 0.0, 1.0};
  EndpointSingularValues ends;
  ends.a0_invertible = false;
  ends.ad_sigma_min = 1.0;
  const auto b = pellet_bounds(w, ends);
  CHECK(b.lower == 0.0);
  CHECK(b.upper == 0.0);
}

TEST_CASE("invalid weight vectors are rejected") {
  EndpointSingularValues ends;
  ends.a0_sigma_min = ends.ad_sigma_min = 1.0;
  CHECK_THROWS_AS(pellet_bounds(std::vector<double>{1.0}, ends), std::invalid_argument);
  CHECK_THROWS_AS(pellet_bounds(std::vector<double>{0.0, 0.0, 0.0}, ends),
                  std::invalid_argument);
  CHECK_THROWS_AS(pellet_bounds(std::vector<double>{1.0, -1.0}, ends),
                  std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(pellet_bounds(std::vector<double>{1.0, nan}, ends),
                  std::invalid_argument);
}

TEST_CASE("two-norm annulus contains matrix eigenvalues and quadratic-form roots") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const int d = 2 + static_cast<int>(rng() % 2);
    std::vector<Matrix> coeffs;
    for (int i = 0; i < d; ++i) {
      Matrix g = oracle::random_matrix(n, rng);
      coeffs.push_back(Matrix((g + g.adjoint()) / 2.0));  // hermitian interior
    }
    Matrix c = oracle::random_matrix(n, rng);
    coeffs.push_back(Matrix(c * c.adjoint() + Matrix::Identity(n, n)));  // definite top
    const polyeig::MatrixPolynomial p(coeffs, polyeig::Structure::General);

    std::vector<double> w;
    for (int i = 0; i <= d; ++i) w.push_back(oracle::svd_sigma_max(p.coeff(i)));
    EndpointSingularValues ends;
    ends.a0_sigma_min = oracle::svd_sigma_min(p.coeff(0));
    ends.a0_invertible = ends.a0_sigma_min > 1e-12;
    ends.ad_sigma_min = oracle::svd_sigma_min(p.coeff(d));
    const auto b = pellet_bounds(w, ends);

    for (cd lam : oracle::block_companion_eigenvalues(p)) {
      CHECK(std::abs(lam) * (1.0 + 1e-8) >= b.lower);
      CHECK(std::abs(lam) <= b.upper * (1.0 + 1e-8));
    }
    // Scalar collapses x* P(lambda) x keep their roots under the upper bound:
    // the definite leading block guarantees x*A_d x >= sigma_min(A_d), which
    // is what the comparison of the two one-sided equations needs.  No lower
    // containment is claimed for form roots (only for eigenvalues).
    for (int probe = 0; probe < 5; ++probe) {
      const auto x = oracle::random_unit(n, rng);
      std::vector<cd> form;
      for (int i = 0; i <= d; ++i) form.push_back((x.adjoint() * p.coeff(i) * x)(0, 0));
      CHECK(std::abs(form.back()) >= 1.0 - 1e-12);  // x*(CC*+I)x >= 1
      for (cd r : oracle::companion_roots(form))
        CHECK(std::abs(r) <= b.upper * (1.0 + 1e-8));
    }
  }
}
