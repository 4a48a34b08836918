#include "polyeig/generator.hpp"

#include <Eigen/Eigenvalues>

#include <random>
#include <stdexcept>
#include <vector>

namespace polyeig {

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::General: return "general";
    case GeneratorKind::Hessenberg: return "hessenberg";
    case GeneratorKind::Tridiagonal: return "tridiagonal";
    case GeneratorKind::Scalar: return "scalar";
    case GeneratorKind::HermitianCoefficients: return "hermitian-coefficients";
    case GeneratorKind::RankDeficientEnds: return "rank-deficient-ends";
  }
  return "general";
}

std::optional<GeneratorKind> generator_kind_from(const std::string& name) {
  for (GeneratorKind k :
       {GeneratorKind::General, GeneratorKind::Hessenberg, GeneratorKind::Tridiagonal,
        GeneratorKind::Scalar, GeneratorKind::HermitianCoefficients,
        GeneratorKind::RankDeficientEnds})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

namespace {

Matrix uniform_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(box(rng), box(rng));
  return a;
}

void mask_structure(Matrix& a, Structure s) {
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!structure_admits(s, i, j)) a(i, j) = cd(0.0, 0.0);
}

// Unitary reduction of a dense draw instead of masking: random matrices with
// zeros filled below the subdiagonal are exponentially ill conditioned in n
// (like random triangular matrices), which degenerates every large-n
// Hessenberg problem; the reduction keeps the dense draw's singular values.
Matrix hessenberg_reduce(const Matrix& a) {
  Eigen::HessenbergDecomposition<Matrix> hd(a);
  Matrix h = hd.matrixH();
  const int n = static_cast<int>(h.rows());
  for (int j = 0; j < n; ++j)
    for (int i = j + 2; i < n; ++i) h(i, j) = cd(0.0, 0.0);
  return h;
}

// Entries on the 1/32 dyadic grid: complex products and the short sums in a
// low-rank matrix product stay exactly representable, so a deficiency built
// this way is exact rather than rounded to ~eps above zero.
Matrix lattice_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(-32, 32);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = cd(grid(rng) / 32.0, grid(rng) / 32.0);
  return a;
}

}  // namespace

MatrixPolynomial generate(GeneratorKind kind, int n, int d, std::uint64_t seed, int k) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("generate: n and d must be at least 1");
  if (kind == GeneratorKind::Scalar) n = 1;
  if (kind == GeneratorKind::RankDeficientEnds && (k < 1 || k >= n))
    throw std::invalid_argument("generate: rank deficiency k must satisfy 1 <= k < n");

  std::mt19937_64 rng(seed);
  std::vector<Matrix> coeffs;
  coeffs.reserve(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) coeffs.push_back(uniform_matrix(n, rng));

  switch (kind) {
    case GeneratorKind::General:
      return MatrixPolynomial(std::move(coeffs));
    case GeneratorKind::Hessenberg:
      for (auto& a : coeffs) a = hessenberg_reduce(a);
      return MatrixPolynomial(std::move(coeffs), Structure::Hessenberg);
    case GeneratorKind::Tridiagonal:
      for (auto& a : coeffs) mask_structure(a, Structure::Tridiagonal);
      return MatrixPolynomial(std::move(coeffs), Structure::Tridiagonal);
    case GeneratorKind::Scalar:
      return MatrixPolynomial(std::move(coeffs), Structure::Scalar);
    case GeneratorKind::HermitianCoefficients: {
      for (int i = 0; i < d; ++i)
        coeffs[static_cast<size_t>(i)] =
            0.5 * (coeffs[static_cast<size_t>(i)] +
                   coeffs[static_cast<size_t>(i)].adjoint().eval());
      Matrix& top = coeffs.back();
      top = (top * top.adjoint() + Matrix::Identity(n, n)).eval();
      return MatrixPolynomial(std::move(coeffs));
    }
    case GeneratorKind::RankDeficientEnds: {
      const Matrix b0 = lattice_matrix(n, n - k, rng);
      const Matrix c0 = lattice_matrix(n, n - k, rng);
      const Matrix bd = lattice_matrix(n, n - k, rng);
      const Matrix cd_ = lattice_matrix(n, n - k, rng);
      coeffs.front() = b0 * c0.adjoint() / 16.0;  // rank n-k exactly
      coeffs.back() = bd * cd_.adjoint() / 16.0;
      return MatrixPolynomial(std::move(coeffs));
    }
  }
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace polyeig
