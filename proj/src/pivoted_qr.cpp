#include "polyeig/pivoted_qr.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace polyeig {

QRPFactors qr_col_pivot(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  QRPFactors f;
  f.r = m;
  f.q = Matrix::Identity(n, n);
  f.perm.resize(static_cast<size_t>(n));
  std::iota(f.perm.begin(), f.perm.end(), 0);

  for (int k = 0; k < n; ++k) {
    // Exact trailing column norms each step: costs the same order as the
    // factorization itself and keeps the pivot-ordering guarantee free of
    // downdating drift.
    int piv = k;
    double best = -1.0;
    for (int j = k; j < n; ++j) {
      const double s = f.r.col(j).tail(n - k).stableNorm();
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    if (best == 0.0) break;  // trailing block is exactly zero
    if (piv != k) {
      f.r.col(piv).swap(f.r.col(k));
      std::swap(f.perm[static_cast<size_t>(k)], f.perm[static_cast<size_t>(piv)]);
    }

    Vector v = f.r.col(k).tail(n - k);
    const double xnorm = best;
    const cd x0 = v(0);
    const cd s = (std::abs(x0) == 0.0) ? cd(xnorm, 0.0) : (x0 / std::abs(x0)) * xnorm;
    v(0) += s;
    normalize_in_place(v);  // unit reflector: H = I - 2 v v*

    auto rblk = f.r.block(k, k, n - k, n - k);
    const Eigen::RowVectorXcd w = v.adjoint() * rblk;
    rblk.noalias() -= 2.0 * v * w;
    f.r(k, k) = -s;
    if (k + 1 < n) f.r.col(k).tail(n - k - 1).setZero();

    auto qblk = f.q.block(0, k, n, n - k);
    const Vector qv = qblk * v;
    qblk.noalias() -= qv * (2.0 * v.adjoint());
  }

  // Phase-normalize so the diagonal of R is real nonnegative (Q R invariant).
  for (int k = 0; k < n; ++k) {
    const cd rkk = f.r(k, k);
    const double a = std::abs(rkk);
    if (a == 0.0) continue;
    const cd ph(rkk.real() / a, rkk.imag() / a);
    f.r.row(k) *= std::conj(ph);
    f.q.col(k) *= ph;
  }
  return f;
}

Vector permute_scatter(const std::vector<int>& perm, const Vector& xhat) {
  Vector x(xhat.size());
  for (size_t j = 0; j < perm.size(); ++j)
    x(perm[j]) = xhat(static_cast<Eigen::Index>(j));
  return x;
}

Vector permute_gather(const std::vector<int>& perm, const Vector& x) {
  Vector xhat(x.size());
  for (size_t j = 0; j < perm.size(); ++j)
    xhat(static_cast<Eigen::Index>(j)) = x(perm[j]);
  return xhat;
}

namespace {

cd guarded_pivot(const Matrix& r, int j) {
  const cd rjj = r(j, j);
  if (rjj != cd(0.0, 0.0)) return rjj;
  double scale = eps * std::abs(r(0, 0));
  if (scale == 0.0) scale = std::numeric_limits<double>::min();
  return cd(scale, 0.0);
}

}  // namespace

Vector solve_upper(const Matrix& r, const Vector& b) {
  const int n = static_cast<int>(r.rows());
  Vector x = b;
  for (int i = n - 1; i >= 0; --i) {
    cd acc = x(i);
    for (int j = i + 1; j < n; ++j) acc -= r(i, j) * x(j);
    x(i) = acc / guarded_pivot(r, i);
  }
  return x;
}

Vector solve_upper_adjoint(const Matrix& r, const Vector& b) {
  const int n = static_cast<int>(r.rows());
  Vector x = b;
  for (int i = 0; i < n; ++i) {
    cd acc = x(i);
    for (int j = 0; j < i; ++j) acc -= std::conj(r(j, i)) * x(j);
    x(i) = acc / std::conj(guarded_pivot(r, i));
  }
  return x;
}

Vector solve_through(const QRPFactors& f, const Vector& b) {
  // M = Q R E^T, so M^{-1} b = E R^{-1} Q* b.
  return permute_scatter(f.perm, solve_upper(f.r, f.q.adjoint() * b));
}

Vector solve_adjoint_through(const QRPFactors& f, const Vector& b) {
  // M* = E R* Q*, so M^{-*} b = Q R^{-*} E^T b.
  return f.q * solve_upper_adjoint(f.r, permute_gather(f.perm, b));
}

std::optional<EigenvectorPair> eigenvectors_from_factors(const QRPFactors& f) {
  const int n = f.n();
  for (int j = 0; j + 1 < n; ++j)
    if (f.r(j, j) == cd(0.0, 0.0)) return std::nullopt;

  Vector xhat = Vector::Zero(n);
  xhat(n - 1) = 1.0;
  for (int i = n - 2; i >= 0; --i) {
    cd acc = -f.r(i, n - 1);
    for (int j = i + 1; j < n - 1; ++j) acc -= f.r(i, j) * xhat(j);
    xhat(i) = acc / f.r(i, i);
  }
  if (!xhat.allFinite()) return std::nullopt;

  EigenvectorPair out;
  out.x = permute_scatter(f.perm, xhat);
  normalize_in_place(out.x);
  out.y = f.q.col(n - 1);
  normalize_in_place(out.y);
  if (!out.x.allFinite() || !out.y.allFinite()) return std::nullopt;
  return out;
}

SingularVectors singular_vectors(const QRPFactors& f) {
  const int n = f.n();
  SingularVectors out;
  if (std::abs(f.r(0, 0)) == 0.0) {  // pivoting: M is exactly zero
    out.x = Vector::Unit(n, 0);
    out.y = Vector::Unit(n, 0);
    out.sigma = 0.0;
    return out;
  }

  // Seeds from the triangular-solve directions (guarded pivots keep them
  // finite even when R is singular).
  Vector xhat = Vector::Zero(n);
  xhat(n - 1) = 1.0;
  for (int i = n - 2; i >= 0; --i) {
    cd acc = -f.r(i, n - 1);
    for (int j = i + 1; j < n - 1; ++j) acc -= f.r(i, j) * xhat(j);
    acc /= guarded_pivot(f.r, i);
    xhat(i) = std::isfinite(acc.real()) && std::isfinite(acc.imag()) ? acc : cd(0.0, 0.0);
  }
  Vector x = permute_scatter(f.perm, xhat);
  normalize_in_place(x);
  Vector y = f.q.col(n - 1);
  normalize_in_place(y);

  bool x_done = false, y_done = false;
  for (int it = 0; it < 20 && !(x_done && y_done); ++it) {
    if (!x_done) {
      // (M*M)^{-1} x = E R^{-1} R^{-*} E^T x
      Vector nx = permute_scatter(
          f.perm, solve_upper(f.r, solve_upper_adjoint(f.r, permute_gather(f.perm, x))));
      const double nn = nx.stableNorm();
      if (nn > 0.0 && nx.allFinite()) {
        normalize_in_place(nx);
        x_done = std::abs(nx.dot(x)) >= 1.0 - 1e-12;
        x = nx;
      } else {
        x_done = true;  // cannot refine further; keep the current iterate
      }
    }
    if (!y_done) {
      // (M M*)^{-1} y = Q R^{-*} R^{-1} Q* y
      Vector ny = f.q * solve_upper_adjoint(f.r, solve_upper(f.r, f.q.adjoint() * y));
      const double nn = ny.stableNorm();
      if (nn > 0.0 && ny.allFinite()) {
        normalize_in_place(ny);
        y_done = std::abs(ny.dot(y)) >= 1.0 - 1e-12;
        y = ny;
      } else {
        y_done = true;
      }
    }
  }
  out.x = x;
  out.y = y;
  out.converged = x_done && y_done;
  out.sigma = (f.r * permute_gather(f.perm, x)).stableNorm();
  return out;
}

void complex_givens(cd a, cd b, double* c, cd* s, cd* r) {
  if (b == cd(0.0, 0.0)) {  // nothing to rotate; keep a bit-exact
    *c = 1.0;
    *s = cd(0.0, 0.0);
    *r = a;
    return;
  }
  const double aa = std::abs(a), ab = std::abs(b);
  const double h = std::hypot(aa, ab);
  if (h == 0.0) {
    *c = 1.0;
    *s = cd(0.0, 0.0);
    *r = cd(0.0, 0.0);
  } else if (aa == 0.0) {
    *c = 0.0;
    *s = cd(b.real() / ab, -b.imag() / ab);
    *r = cd(ab, 0.0);
  } else {
    *c = aa / h;
    const cd pha = a / aa;
    *s = pha * (std::conj(b) / h);
    *r = pha * h;
  }
}

}  // namespace polyeig
