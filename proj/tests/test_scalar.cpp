#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "polyeig/scalar_solver.hpp"

using namespace polyeig;

namespace {

std::vector<cd> roots_of(const ScalarSolveReport& rep) {
  std::vector<cd> out;
  for (const auto& r : rep.roots) out.push_back(r.value);
  return out;
}

}  // namespace

TEST_CASE("newton polygon of quadratic with unit roots") {
  ScalarPolynomial w({cd(-1.0), cd(0.0), cd(1.0)});
  const auto np = newton_polygon(w);
  REQUIRE(np.vertex_index == std::vector<int>{0, 2});
  REQUIRE(np.radius.size() == 1);
  CHECK(np.radius[0] == doctest::Approx(1.0));

  const auto est = initial_estimates_scalar(np);
  REQUIRE(est.size() == 2);
  CHECK(std::abs(est[0] - std::polar(1.0, 0.7)) < 1e-14);
  CHECK(std::abs(est[1] - std::polar(1.0, 0.7 + M_PI)) < 1e-14);
}

TEST_CASE("newton polygon matches brute-force hull on random sparse inputs") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> logmag(-8.0, 8.0);
  std::uniform_real_distribution<double> theta(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 12);
    std::vector<cd> coeffs(d + 1, cd(0.0));
    for (int i = 0; i <= d; ++i)
      if (keep(rng) < 0.7) coeffs[i] = std::polar(std::exp(logmag(rng)), theta(rng));
    coeffs[d] = std::polar(std::exp(logmag(rng)), theta(rng));
    bool any_low = false;
    for (int i = 0; i < d; ++i) any_low |= coeffs[i] != cd(0.0);
    if (!any_low) coeffs[0] = cd(1.0);
    ScalarPolynomial w(coeffs);

    std::vector<double> xs, ys;
    std::vector<int> which;
    for (int i = 0; i <= w.degree(); ++i)
      if (std::abs(w.coeff(i)) != 0.0) {
        xs.push_back(i);
        ys.push_back(std::log(std::abs(w.coeff(i))));
        which.push_back(i);
      }
    const auto brute = oracle::brute_upper_hull(xs, ys);
    std::vector<int> expect;
    for (int b : brute) expect.push_back(which[static_cast<size_t>(b)]);

    const auto np = newton_polygon(w);
    CHECK(np.vertex_index == expect);
    for (size_t i = 1; i < np.radius.size(); ++i)
      CHECK(np.radius[i] > np.radius[i - 1]);
    int count = 0;
    for (size_t s = 0; s < np.radius.size(); ++s)
      count += np.vertex_index[s + 1] - np.vertex_index[s];
    CHECK(count == np.vertex_index.back() - np.vertex_index.front());
    CHECK(initial_estimates_scalar(np).size() == static_cast<size_t>(count));
  }
}

TEST_CASE("degenerate monomial has no segments") {
  ScalarPolynomial w({cd(0.0), cd(0.0), cd(0.0), cd(1.0)});
  const auto np = newton_polygon(w);
  CHECK(np.vertex_index == std::vector<int>{3});
  CHECK(np.radius.empty());
  CHECK(initial_estimates_scalar(np).empty());

  const auto rep = solve_scalar(w);
  REQUIRE(rep.roots.size() == 3);
  for (const auto& r : rep.roots) {
    CHECK(r.value == cd(0.0));
    CHECK(r.status == StopReason::Criterion1);
  }
}

TEST_CASE("laguerre step closed forms") {
  ScalarPolynomial w({cd(-1.0), cd(0.0), cd(1.0)});
  const auto s = laguerre_sums_scalar(w, cd(2.0), {});
  CHECK(std::abs(s.s1 - cd(4.0 / 3.0)) < 1e-15);
  CHECK(std::abs(s.s2 - cd(10.0 / 9.0)) < 1e-15);

  const auto step = laguerre_step_scalar(w, cd(2.0), {}, 2);
  REQUIRE(step.has_value());
  CHECK(std::abs(*step - cd(1.0)) < 1e-15);

  const auto deflated_step = laguerre_step_scalar(w, cd(-2.0), {cd(1.0)}, 1);
  REQUIRE(deflated_step.has_value());
  CHECK(std::abs(*deflated_step - cd(-1.0)) < 1e-15);

  // s1 = 0 and zero discriminant: the step must be rejected, not divided out.
  ScalarPolynomial cubic({cd(-1.0), cd(0.0), cd(0.0), cd(1.0)});
  CHECK_FALSE(laguerre_step_scalar(cubic, cd(0.0), {}, 3).has_value());
}

TEST_CASE("laguerre sums equal partial fractions over converged branches") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> roots;
  for (int k = 0; k < 6; ++k) roots.push_back(cd(2.0 * u(rng), 2.0 * u(rng)));
  ScalarPolynomial w(oracle::poly_from_roots(roots));

  for (cd lambda : {cd(0.3, 0.4), cd(2.5, -1.0), cd(-3.0, 2.0), cd(0.9, 0.0)}) {
    cd s1(0.0), s2(0.0);
    for (cd r : roots) {
      const cd t = 1.0 / (lambda - r);
      s1 += t;
      s2 += t * t;
    }
    const auto s = laguerre_sums_scalar(w, lambda, {});
    CHECK(std::abs(s.s1 - s1) / std::max(1.0, std::abs(s1)) < 1e-9);
    CHECK(std::abs(s.s2 - s2) / std::max(1.0, std::abs(s2)) < 1e-9);

    // Deflating the first two roots must subtract exactly their terms.
    cd d1 = s1, d2 = s2;
    for (int k = 0; k < 2; ++k) {
      const cd t = 1.0 / (lambda - roots[static_cast<size_t>(k)]);
      d1 -= t;
      d2 -= t * t;
    }
    const auto sd = laguerre_sums_scalar(w, lambda, {roots[0], roots[1]});
    CHECK(std::abs(sd.s1 - d1) / std::max(1.0, std::abs(d1)) < 1e-9);
    CHECK(std::abs(sd.s2 - d2) / std::max(1.0, std::abs(d2)) < 1e-9);
  }
}

TEST_CASE("solve quadratic") {
  ScalarPolynomial w({cd(-1.0), cd(0.0), cd(1.0)});
  const auto rep = solve_scalar(w);
  REQUIRE(rep.roots.size() == 2);
  const double gap =
      oracle::pair_max_rel_gap({cd(1.0), cd(-1.0)}, roots_of(rep));
  CHECK(gap < 1e-12);
  for (const auto& r : rep.roots) {
    CHECK(converged(r.status));
    CHECK(r.iterations <= 6);
  }
}

TEST_CASE("wilkinson roots one through ten") {
  std::vector<cd> roots;
  for (int j = 1; j <= 10; ++j) roots.push_back(cd(j, 0.0));
  ScalarPolynomial w(oracle::poly_from_roots(roots));
  const auto rep = solve_scalar(w);
  REQUIRE(rep.roots.size() == 10);
  CHECK(oracle::pair_max_rel_gap(roots, roots_of(rep)) < 1e-8);
  CHECK(rep.used_reversal);
  CHECK(rep.nonfinite_events == 0);
}

TEST_CASE("deflation recovers twenty distinct unit-circle roots") {
  const int d = 20;
  std::vector<cd> roots;
  for (int k = 0; k < d; ++k)
    roots.push_back(std::polar(1.0, 2.0 * M_PI * k / d + 0.3));
  ScalarPolynomial w(oracle::poly_from_roots(roots));
  const auto rep = solve_scalar(w);
  REQUIRE(rep.roots.size() == static_cast<size_t>(d));
  CHECK(oracle::pair_max_rel_gap(roots, roots_of(rep)) < 1e-8);
  const auto got = roots_of(rep);
  for (size_t i = 0; i < got.size(); ++i)
    for (size_t j = i + 1; j < got.size(); ++j)
      CHECK(std::abs(got[i] - got[j]) > 1e-6);
  // Ultra-well-conditioned roots may exhaust the budget hovering one ulp from
  // the true root; the residual bound must hold for every returned root.
  for (const auto& r : rep.roots)
    CHECK(oracle::eta_scalar(w.coeffs(), r.value) <= 10.0 * d * eps);
}

TEST_CASE("large modulus roots go through the reversal branch") {
  std::vector<cd> roots;
  for (int k = 0; k < 8; ++k)
    roots.push_back(std::polar(1e3, 2.0 * M_PI * k / 8 + 0.1));
  ScalarPolynomial w(oracle::poly_from_roots(roots));
  const auto rep = solve_scalar(w);
  CHECK(rep.used_reversal);
  CHECK(oracle::pair_max_rel_gap(roots, roots_of(rep)) < 1e-9);
  CHECK(rep.nonfinite_events == 0);
}

TEST_CASE("leading zero coefficients become exact zero roots") {
  // lambda^2 (lambda - 2) = -2 lambda^2 + lambda^3
  ScalarPolynomial w({cd(0.0), cd(0.0), cd(-2.0), cd(1.0)});
  const auto rep = solve_scalar(w);
  REQUIRE(rep.roots.size() == 3);
  CHECK(rep.roots[0].value == cd(0.0));
  CHECK(rep.roots[1].value == cd(0.0));
  CHECK(std::abs(rep.roots[2].value - cd(2.0)) < 1e-12);
}

TEST_CASE("huge dynamic range degree four hundred") {
  const int d = 400;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> theta(0.0, 2.0 * M_PI);
  std::vector<cd> coeffs;
  for (int i = 0; i <= d; ++i) {
    const double mag = std::pow(10.0, 300.0 * std::sin(2.0 * M_PI * i / d));
    coeffs.push_back(std::polar(mag, theta(rng)));
  }
  ScalarPolynomial w(coeffs);
  const auto rep = solve_scalar(w);
  REQUIRE(rep.roots.size() == static_cast<size_t>(d));
  CHECK(rep.nonfinite_events == 0);
  double worst = 0.0;
  for (const auto& r : rep.roots) {
    CHECK(std::isfinite(r.value.real()));
    CHECK(std::isfinite(r.value.imag()));
    worst = std::max(worst, oracle::eta_scalar(w.coeffs(), r.value));
  }
  CHECK(worst <= 10.0 * d * eps);
}
