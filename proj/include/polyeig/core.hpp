#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyeig {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Unit roundoff for IEEE double.
inline constexpr double eps = 1.110223024625156540e-16;  // 2^-53

// Normalize by the overflow-safe norm using componentwise real division.
// (Eigen's vectorized complex-by-real division squares the denominator
// internally, which overflows for norms beyond ~1e154.)
inline void normalize_in_place(Vector& v) {
  const double s = v.stableNorm();
  if (s == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = cd(v(i).real() / s, v(i).imag() / s);
}

enum class Structure { General, Hessenberg, Tridiagonal, Scalar };

std::string to_string(Structure s);

// May entry (i, j) of a coefficient be nonzero under the given tag?
bool structure_admits(Structure s, int i, int j);

// P(lambda) = sum_{i=0..d} lambda^i A_i with A_d != 0.  Coefficients are held
// dense regardless of the structure tag; structured algorithms exploit the
// tag, not the storage.
class MatrixPolynomial {
 public:
  MatrixPolynomial(std::vector<Matrix> coeffs, Structure s = Structure::General);

  int n() const { return static_cast<int>(coeffs_[0].rows()); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Matrix& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  Structure structure() const { return structure_; }

 private:
  std::vector<Matrix> coeffs_;
  Structure structure_;
};

// Scalar polynomial w(lambda) = sum a_i lambda^i; trailing zero coefficients
// are trimmed at construction and the all-zero polynomial is rejected.
class ScalarPolynomial {
 public:
  explicit ScalarPolynomial(std::vector<cd> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  cd coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }
  const std::vector<cd>& coeffs() const { return coeffs_; }

 private:
  std::vector<cd> coeffs_;
};

struct EvalTriple {
  Matrix value;  // P(lambda)        (or rP(rho))
  Matrix d1;     // P'(lambda)       (or rP'(rho))
  Matrix d2;     // P''(lambda)      (or rP''(rho))
};

struct ScalarTriple {
  cd value;
  cd d1;
  cd d2;
};

// Single Horner sweep with three accumulators.  Throws std::invalid_argument
// for non-finite lambda and std::range_error if an accumulator overflows.
EvalTriple eval_with_derivatives(const MatrixPolynomial& p, cd lambda);

// Same sweep on the reversal rP(rho) = sum rho^(d-i) A_i.  Callers route
// |lambda| > 1 here with rho = 1/lambda.
EvalTriple eval_reversal(const MatrixPolynomial& p, cd rho);

ScalarTriple eval_with_derivatives(const ScalarPolynomial& w, cd lambda);
ScalarTriple eval_reversal(const ScalarPolynomial& w, cd rho);

// Frobenius norms of the coefficients plus the scale polynomials
// alpha(s) = sum s^i ||A_i||_F and alpha_rev(s) = sum s^(d-i) ||A_i||_F
// used by stopping tests, backward errors and condition numbers.
struct CoefficientWeights {
  std::vector<double> norms;

  double alpha(double abs_lambda) const;
  double alpha_rev(double abs_rho) const;
};

CoefficientWeights coefficient_weights(const MatrixPolynomial& p);
CoefficientWeights coefficient_weights(const ScalarPolynomial& w);

}  // namespace polyeig
