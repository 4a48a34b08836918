#include "polyeig/prep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyeig/pellet.hpp"
#include "polyeig/pivoted_qr.hpp"
#include "polyeig/scalar_solver.hpp"

namespace polyeig {

double default_rank_tol(const Matrix& a) {
  return static_cast<double>(a.rows()) * eps * a.stableNorm();
}

RankReveal rank_reveal(const Matrix& a, double tol) {
  const int n = static_cast<int>(a.rows());
  if (tol <= 0.0) tol = default_rank_tol(a);
  const QRPFactors f = qr_col_pivot(a);

  int k1 = 0;
  while (k1 < n && std::abs(f.r(k1, k1)) > tol) ++k1;
  const int k2 = n - k1;

  RankReveal out;
  out.rank = k1;
  out.q_columns = f.q;
  out.right_null = Matrix::Zero(n, k2);
  out.left_null = Matrix::Zero(n, k2);
  for (int c = 0; c < k2; ++c) {
    const int j = k1 + c;
    Vector xhat = Vector::Zero(n);
    xhat(j) = 1.0;
    for (int i = k1 - 1; i >= 0; --i) {
      cd acc = -f.r(i, j);
      for (int m = i + 1; m < k1; ++m) acc -= f.r(i, m) * xhat(m);
      xhat(i) = acc / f.r(i, i);
    }
    Vector x = permute_scatter(f.perm, xhat);
    if (!x.allFinite()) x = permute_scatter(f.perm, Vector::Unit(n, j));
    normalize_in_place(x);
    out.right_null.col(c) = x;
    out.left_null.col(c) = f.q.col(j);
  }
  return out;
}

namespace {

struct TriQR {
  std::vector<cd> r0, r1, r2;  // diagonal, first and second superdiagonal
  Matrix q;

  cd band(int i, int j) const {
    if (j == i) return r0[static_cast<size_t>(i)];
    if (j == i + 1) return r1[static_cast<size_t>(i)];
    if (j == i + 2) return r2[static_cast<size_t>(i)];
    return cd(0.0, 0.0);
  }
};

TriQR tridiagonal_qr(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  TriQR t;
  t.r0.resize(static_cast<size_t>(n));
  t.r1.assign(n > 1 ? static_cast<size_t>(n - 1) : 0, cd(0.0, 0.0));
  t.r2.assign(n > 2 ? static_cast<size_t>(n - 2) : 0, cd(0.0, 0.0));
  t.q = Matrix::Identity(n, n);

  cd alpha = a(0, 0);
  cd beta = n > 1 ? a(0, 1) : cd(0.0, 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    double c;
    cd s, r;
    complex_givens(alpha, a(k + 1, k), &c, &s, &r);
    t.r0[static_cast<size_t>(k)] = r;

    const cd dk1 = a(k + 1, k + 1);
    t.r1[static_cast<size_t>(k)] = c * beta + s * dk1;
    const cd next_alpha = -std::conj(s) * beta + c * dk1;
    const cd sk1 = (k + 2 < n) ? a(k + 1, k + 2) : cd(0.0, 0.0);
    if (k + 2 < n) t.r2[static_cast<size_t>(k)] = s * sk1;  // row k fill-in
    const cd next_beta = c * sk1;

    // Q <- Q G_k*, acting on columns k and k+1.
    for (int i = 0; i < n; ++i) {
      const cd qa = t.q(i, k), qb = t.q(i, k + 1);
      t.q(i, k) = c * qa + std::conj(s) * qb;
      t.q(i, k + 1) = -s * qa + c * qb;
    }
    alpha = next_alpha;
    beta = next_beta;
  }
  t.r0[static_cast<size_t>(n - 1)] = alpha;
  return t;
}

}  // namespace

RankReveal tridiagonal_pivot_scan(const Matrix& a, double tol) {
  const int n = static_cast<int>(a.rows());
  if (tol <= 0.0) tol = default_rank_tol(a);
  const TriQR t = tridiagonal_qr(a);

  // Row-by-row pivot identification: a row's pivot must sit strictly right
  // of the previous pivot, and the band limits the search to three entries.
  std::vector<int> pivot_col(static_cast<size_t>(n), -1);
  std::vector<bool> is_pivot_col(static_cast<size_t>(n), false);
  int prev = -1, rank = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i, prev + 1); j <= std::min(i + 2, n - 1); ++j) {
      if (std::abs(t.band(i, j)) > tol) {
        pivot_col[static_cast<size_t>(i)] = j;
        is_pivot_col[static_cast<size_t>(j)] = true;
        prev = j;
        ++rank;
        break;
      }
    }
  }

  RankReveal out;
  out.rank = rank;
  out.q_columns = t.q;
  const int k2 = n - rank;
  out.right_null = Matrix::Zero(n, k2);
  out.left_null = Matrix::Zero(n, k2);

  int c = 0;
  for (int j = 0; j < n; ++j) {
    if (is_pivot_col[static_cast<size_t>(j)]) continue;
    // Free variable at column j; back-substitute the pivot variables.
    Vector x = Vector::Zero(n);
    x(j) = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      const int p = pivot_col[static_cast<size_t>(i)];
      if (p < 0) continue;
      cd acc(0.0, 0.0);
      for (int m = p + 1; m <= std::min(i + 2, n - 1); ++m) acc -= t.band(i, m) * x(m);
      x(p) = acc / t.band(i, p);
    }
    normalize_in_place(x);
    out.right_null.col(c) = x;
    ++c;
  }
  c = 0;
  for (int i = 0; i < n; ++i) {
    if (pivot_col[static_cast<size_t>(i)] >= 0) continue;
    out.left_null.col(c) = t.q.col(i);
    ++c;
  }
  return out;
}

namespace {

cd quadratic_form(const Matrix& a, const Vector& x, bool tridiagonal) {
  if (!tridiagonal) return (x.adjoint() * (a * x))(0);
  const int n = static_cast<int>(a.rows());
  cd acc(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    cd row = a(i, i) * x(i);
    if (i > 0) row += a(i, i - 1) * x(i - 1);
    if (i + 1 < n) row += a(i, i + 1) * x(i + 1);
    acc += std::conj(x(i)) * row;
  }
  return acc;
}

double shortfall_circle_radius(const MatrixPolynomial& p, int ad_rank,
                               const std::vector<double>& norms) {
  double cd_weight = 0.0;
  if (ad_rank == p.n()) {
    const SingularVectors sv = singular_vectors(qr_col_pivot(p.coeff(p.degree())));
    cd_weight = sv.sigma;
  }
  if (cd_weight <= 0.0) cd_weight = norms.back();  // Frobenius fallback
  EndpointSingularValues ends;
  ends.a0_invertible = false;
  ends.ad_invertible = true;
  ends.ad_sigma_min = cd_weight;
  const PelletBounds b = pellet_bounds(norms, ends);
  if (!std::isfinite(b.upper) || b.upper <= 0.0) return 1.0;
  return b.upper;
}

}  // namespace

EstimateSet initial_estimates(const MatrixPolynomial& p) {
  const int n = p.n(), d = p.degree();
  const bool tri = p.structure() == Structure::Tridiagonal;
  const auto reveal = [&](const Matrix& a) {
    return tri ? tridiagonal_pivot_scan(a) : rank_reveal(a);
  };
  const RankReveal reveal0 = reveal(p.coeff(0));
  const RankReveal reveald = reveal(p.coeff(d));

  EstimateSet out;
  out.zero_multiplicity = n - reveal0.rank;
  out.zero_right = reveal0.right_null;
  out.zero_left = reveal0.left_null;
  out.infinite_multiplicity = n - reveald.rank;
  out.inf_right = reveald.right_null;
  out.inf_left = reveald.left_null;

  const long target =
      static_cast<long>(n) * d - out.zero_multiplicity - out.infinite_multiplicity;
  if (target < 0)
    throw std::runtime_error(
        "possibly non-regular matrix polynomial: zero/infinite multiplicities exceed nd");

  const CoefficientWeights w = coefficient_weights(p);

  // Working-precision Q columns contaminate an exactly degenerate form at
  // the O(n eps ||A||) level, so the negligibility scale carries the n factor.
  const auto coeff_tol = [&](int i) {
    return 10.0 * n * eps * w.norms[static_cast<size_t>(i)];
  };

  bool any_effective = false;
  std::vector<cd> pool;
  for (int j = 0; j < n; ++j) {
    std::vector<cd> form(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i)
      form[static_cast<size_t>(i)] = quadratic_form(p.coeff(i), reveald.q_columns.col(j), tri);
    if (std::abs(form[static_cast<size_t>(d)]) < coeff_tol(d)) {
      // Degree drop: retry against the constant coefficient's Q column.
      for (int i = 0; i <= d; ++i)
        form[static_cast<size_t>(i)] =
            quadratic_form(p.coeff(i), reveal0.q_columns.col(j), tri);
    }
    bool negligible = true;
    for (int i = 0; i <= d; ++i)
      if (std::abs(form[static_cast<size_t>(i)]) > coeff_tol(i)) {
        negligible = false;
        break;
      }
    if (negligible) continue;
    any_effective = true;

    // Sub-roundoff leading coefficients are indistinguishable from zero and
    // would otherwise spawn spurious near-infinite roots.
    while (form.size() > 1 &&
           std::abs(form.back()) < coeff_tol(static_cast<int>(form.size()) - 1))
      form.pop_back();
    const ScalarPolynomial sp(form);
    if (sp.degree() == 0) continue;
    const ScalarSolveReport rep = solve_scalar(sp);
    for (const ScalarRoot& root : rep.roots) pool.push_back(root.value);
  }
  if (!any_effective)
    throw std::runtime_error(
        "possibly non-regular matrix polynomial: every quadratic form is negligible");

  std::sort(pool.begin(), pool.end(),
            [](cd a, cd b) { return std::abs(a) > std::abs(b); });
  if (static_cast<long>(pool.size()) > target) pool.resize(static_cast<size_t>(target));
  if (static_cast<long>(pool.size()) < target) {
    const long miss = target - static_cast<long>(pool.size());
    const double radius = shortfall_circle_radius(p, reveald.rank, w.norms);
    for (long k = 0; k < miss; ++k) {
      const double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(miss) + 0.7;
      pool.push_back(std::polar(radius, ang));
    }
  }
  out.finite_estimates = std::move(pool);
  return out;
}

}  // namespace polyeig
