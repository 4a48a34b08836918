#include "polyeig/core.hpp"

#include <cmath>

namespace polyeig {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::General: return "general";
    case Structure::Hessenberg: return "hessenberg";
    case Structure::Tridiagonal: return "tridiagonal";
    case Structure::Scalar: return "scalar";
  }
  return "general";
}

bool structure_admits(Structure s, int i, int j) {
  switch (s) {
    case Structure::General: return true;
    case Structure::Hessenberg: return i <= j + 1;
    case Structure::Tridiagonal: return std::abs(i - j) <= 1;
    case Structure::Scalar: return i == 0 && j == 0;
  }
  return true;
}

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coeffs, Structure s)
    : coeffs_(std::move(coeffs)), structure_(s) {
  if (coeffs_.empty())
    throw std::invalid_argument("matrix polynomial needs at least one coefficient");
  const auto rows = coeffs_[0].rows();
  if (rows < 1 || coeffs_[0].cols() != rows)
    throw std::invalid_argument("coefficients must be square and nonempty");
  for (const auto& a : coeffs_)
    if (a.rows() != rows || a.cols() != rows)
      throw std::invalid_argument("coefficient dimensions disagree");
  if (coeffs_.size() < 2)
    throw std::invalid_argument("degree must be at least 1");
  // Exact comparison, not isZero(): squaring entries near 1e-300 underflows
  // and would misreport a tiny-but-nonzero leading coefficient as zero.
  if (coeffs_.back().cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("leading coefficient is identically zero");
  if (s == Structure::Scalar && rows != 1)
    throw std::invalid_argument("scalar structure requires n = 1");
  if (s != Structure::General) {
    for (const auto& a : coeffs_)
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
          if (a(i, j) != cd(0.0, 0.0) && !structure_admits(s, i, j))
            throw std::invalid_argument("coefficient entry violates structure tag " +
                                        to_string(s));
  }
  for (const auto& a : coeffs_)
    if (!a.allFinite()) throw std::invalid_argument("coefficient entries must be finite");
}

ScalarPolynomial::ScalarPolynomial(std::vector<cd> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == cd(0.0, 0.0)) coeffs_.pop_back();
  if (coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0] == cd(0.0, 0.0)))
    throw std::invalid_argument("scalar polynomial is identically zero");
  for (cd a : coeffs_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("scalar coefficients must be finite");
}

namespace {

bool finite(cd x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

void require_finite_point(cd x) {
  if (!finite(x)) throw std::invalid_argument("evaluation point must be finite");
}

// Horner with accumulators for the value and the first two derivatives:
// walking coefficients from high to low,
//   d2 <- d2*x + 2*d1,  d1 <- d1*x + v,  v <- v*x + c.
template <class Acc, class CoeffAt>
void horner_triple(int d, cd x, CoeffAt at, Acc& v, Acc& d1, Acc& d2) {
  v = at(d);
  for (int i = d - 1; i >= 0; --i) {
    d2 = d2 * x + 2.0 * d1;
    d1 = d1 * x + v;
    v = v * x + at(i);
  }
}

}  // namespace

EvalTriple eval_with_derivatives(const MatrixPolynomial& p, cd lambda) {
  require_finite_point(lambda);
  const int n = p.n(), d = p.degree();
  EvalTriple t{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
  horner_triple(d, lambda, [&](int i) -> const Matrix& { return p.coeff(i); },
                t.value, t.d1, t.d2);
  if (!t.value.allFinite() || !t.d1.allFinite() || !t.d2.allFinite())
    throw std::range_error("polynomial evaluation overflowed");
  return t;
}

EvalTriple eval_reversal(const MatrixPolynomial& p, cd rho) {
  require_finite_point(rho);
  const int n = p.n(), d = p.degree();
  EvalTriple t{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
  horner_triple(d, rho, [&](int i) -> const Matrix& { return p.coeff(d - i); },
                t.value, t.d1, t.d2);
  if (!t.value.allFinite() || !t.d1.allFinite() || !t.d2.allFinite())
    throw std::range_error("reversal evaluation overflowed");
  return t;
}

ScalarTriple eval_with_derivatives(const ScalarPolynomial& w, cd lambda) {
  require_finite_point(lambda);
  ScalarTriple t{0.0, 0.0, 0.0};
  horner_triple(w.degree(), lambda, [&](int i) { return w.coeff(i); },
                t.value, t.d1, t.d2);
  if (!finite(t.value) || !finite(t.d1) || !finite(t.d2))
    throw std::range_error("polynomial evaluation overflowed");
  return t;
}

ScalarTriple eval_reversal(const ScalarPolynomial& w, cd rho) {
  require_finite_point(rho);
  const int d = w.degree();
  ScalarTriple t{0.0, 0.0, 0.0};
  horner_triple(d, rho, [&](int i) { return w.coeff(d - i); }, t.value, t.d1, t.d2);
  if (!finite(t.value) || !finite(t.d1) || !finite(t.d2))
    throw std::range_error("reversal evaluation overflowed");
  return t;
}

double CoefficientWeights::alpha(double abs_lambda) const {
  double acc = 0.0;
  for (size_t i = norms.size(); i-- > 0;) acc = acc * abs_lambda + norms[i];
  return acc;
}

double CoefficientWeights::alpha_rev(double abs_rho) const {
  double acc = 0.0;
  for (size_t i = 0; i < norms.size(); ++i) acc = acc * abs_rho + norms[i];
  return acc;
}

CoefficientWeights coefficient_weights(const MatrixPolynomial& p) {
  CoefficientWeights w;
  w.norms.reserve(static_cast<size_t>(p.degree()) + 1);
  for (const auto& a : p.coeffs()) w.norms.push_back(a.stableNorm());
  return w;
}

CoefficientWeights coefficient_weights(const ScalarPolynomial& w) {
  CoefficientWeights cw;
  cw.norms.reserve(w.coeffs().size());
  for (cd a : w.coeffs()) cw.norms.push_back(std::abs(a));
  return cw;
}

}  // namespace polyeig
