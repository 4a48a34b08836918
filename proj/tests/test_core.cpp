#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polyeig/core.hpp"

using namespace polyeig;

namespace {

MatrixPolynomial random_problem(int n, int d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> coeffs;
  for (int i = 0; i <= d; ++i) coeffs.push_back(oracle::random_matrix(n, rng));
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace

TEST_CASE("construction contracts") {
  std::vector<Matrix> ok{Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  CHECK_NOTHROW(MatrixPolynomial{ok});

  std::vector<Matrix> zero_lead{Matrix::Identity(2, 2), Matrix::Zero(2, 2)};
  CHECK_THROWS_AS(MatrixPolynomial{zero_lead}, std::invalid_argument);

  std::vector<Matrix> mismatched{Matrix::Identity(2, 2), Matrix::Identity(3, 3)};
  CHECK_THROWS_AS(MatrixPolynomial{mismatched}, std::invalid_argument);

  Matrix full = Matrix::Ones(3, 3);
  std::vector<Matrix> dense3{full, full};
  CHECK_THROWS_AS(MatrixPolynomial(dense3, Structure::Tridiagonal),
                  std::invalid_argument);
  Matrix tri = Matrix::Zero(3, 3);
  tri(0, 0) = 1.0;
  tri(1, 0) = 2.0;
  tri(0, 1) = 3.0;
  tri(1, 1) = 4.0;
  tri(2, 1) = 5.0;
  tri(1, 2) = 6.0;
  tri(2, 2) = 7.0;
  std::vector<Matrix> tri3{tri, tri};
  CHECK_NOTHROW(MatrixPolynomial(tri3, Structure::Tridiagonal));
  CHECK_NOTHROW(MatrixPolynomial(tri3, Structure::Hessenberg));

  const std::vector<cd> all_zero{cd(0.0), cd(0.0)};
  CHECK_THROWS_AS(ScalarPolynomial{all_zero}, std::invalid_argument);
  ScalarPolynomial trimmed({cd(1.0), cd(2.0), cd(0.0), cd(0.0)});
  CHECK(trimmed.degree() == 1);
}

TEST_CASE("identity quadratic at one half") {
  std::vector<Matrix> coeffs{Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                             Matrix::Identity(2, 2)};
  MatrixPolynomial p(coeffs);
  const auto t = eval_with_derivatives(p, cd(0.5));
  CHECK((t.value - 1.75 * Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
  CHECK((t.d1 - 2.0 * Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
  CHECK((t.d2 - 2.0 * Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("derivatives match central finite differences") {
  for (uint64_t seed : {11u, 12u, 13u}) {
    const auto p = random_problem(4, 3, seed);
    std::mt19937_64 rng(seed + 100);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int k = 0; k < 5; ++k) {
      const cd lambda(u(rng), u(rng));
      const auto t = eval_with_derivatives(p, lambda);
      const auto fd = oracle::finite_difference(p, lambda);
      const double s1 = std::max(1.0, fd.d1.norm());
      const double s2 = std::max(1.0, fd.d2.norm());
      CHECK((t.d1 - fd.d1).norm() / s1 < 1e-6);
      CHECK((t.d2 - fd.d2).norm() / s2 < 1e-6);
      CHECK((t.value - oracle::naive_eval(p, lambda).cast<cd>()).norm() < 1e-12);
    }
  }
}

TEST_CASE("reversal identity over moduli 0.1 to 10") {
  const auto p = random_problem(3, 4, 77);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logmod(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> arg(0.0, 2.0 * M_PI);
  for (int k = 0; k < 20; ++k) {
    const double m = std::exp(logmod(rng));
    const cd lambda = std::polar(m, arg(rng));
    const cd rho = 1.0 / lambda;
    const auto rev = eval_reversal(p, rho);
    // rP(1/lambda) = lambda^{-d} P(lambda), checked entrywise in extended
    // precision on the right-hand side.
    oracle::cl lam(lambda.real(), lambda.imag());
    oracle::cl scale = 1.0L;
    for (int i = 0; i < p.degree(); ++i) scale *= lam;
    const oracle::MatrixL rhs = oracle::naive_eval(p, lambda) / scale;
    const double denom = std::max(1.0, static_cast<double>(oracle::fro_norm(rhs)));
    CHECK((oracle::widen(rev.value) - rhs).norm() / denom < 1e-12);
  }
}

TEST_CASE("reversal of reversal is the identity map on coefficients") {
  const auto p = random_problem(3, 3, 99);
  const cd x(0.37, -0.21);
  const auto direct = eval_with_derivatives(p, x);
  std::vector<Matrix> flipped;
  for (int i = p.degree(); i >= 0; --i) flipped.push_back(p.coeff(i));
  MatrixPolynomial q(flipped);
  const auto rev = eval_reversal(q, x);
  CHECK((direct.value - rev.value).norm() < 1e-13);
}

TEST_CASE("evaluation rejects non-finite points and reports overflow") {
  const auto p = random_problem(2, 2, 3);
  CHECK_THROWS_AS(eval_with_derivatives(p, cd(std::nan(""), 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      eval_with_derivatives(p, cd(std::numeric_limits<double>::infinity(), 0.0)),
      std::invalid_argument);

  std::vector<Matrix> huge{1e300 * Matrix::Ones(2, 2), 1e300 * Matrix::Ones(2, 2),
                           1e300 * Matrix::Ones(2, 2)};
  MatrixPolynomial hp(huge);
  CHECK_THROWS_AS(eval_with_derivatives(hp, cd(1e6, 0.0)), std::range_error);
}

TEST_CASE("weights and scale polynomials") {
  std::vector<Matrix> coeffs{Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  MatrixPolynomial p(coeffs);
  const auto w = coefficient_weights(p);
  REQUIRE(w.norms.size() == 2);
  const double r2 = std::sqrt(2.0);
  CHECK(w.norms[0] == doctest::Approx(r2));
  CHECK(w.norms[1] == doctest::Approx(r2));
  CHECK(w.alpha(1.0) == doctest::Approx(2.0 * r2));
  CHECK(w.alpha(0.0) == doctest::Approx(r2));
  CHECK(w.alpha_rev(0.0) == doctest::Approx(r2));
  CHECK(w.alpha_rev(0.5) == doctest::Approx(r2 + 0.5 * r2));

  const auto p2 = random_problem(4, 3, 21);
  const auto w2 = coefficient_weights(p2);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const double t = u(rng);
    CHECK(w2.alpha(t) ==
          doctest::Approx(static_cast<double>(oracle::alpha_weight(p2, t))));
    CHECK(w2.alpha_rev(t) ==
          doctest::Approx(static_cast<double>(oracle::alpha_rev_weight(p2, t))));
  }
}

TEST_CASE("scalar evaluation matches matrix evaluation at n equals one") {
  ScalarPolynomial w({cd(-1.0), cd(0.0), cd(1.0)});
  const auto t = eval_with_derivatives(w, cd(2.0));
  CHECK(t.value == cd(3.0));
  CHECK(t.d1 == cd(4.0));
  CHECK(t.d2 == cd(2.0));
  const auto r = eval_reversal(w, cd(0.5));
  // rw(rho) = 1 - rho^2 at rho = 1/2.
  CHECK(r.value == cd(0.75));
}
