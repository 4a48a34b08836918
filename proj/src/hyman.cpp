#include "polyeig/hyman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "engine_common.hpp"

namespace polyeig {
namespace {

// Subdiagonal values below eps in magnitude are replaced by eps so the
// recurrences never divide by zero; an exactly singular point then surfaces
// as b = 0 rather than as a crash.
cd substitute(cd v) { return std::abs(v) < eps ? cd(eps, 0.0) : v; }

// Evaluated tridiagonal bands: value, first and second derivative of every
// entry polynomial.  sub/sup have length n-1, dia length n.
struct Bands {
  Vector sub, dia, sup;
  Vector sub1, dia1, sup1;
  Vector sub2, dia2, sup2;
};

// Entry-wise Horner sweep matching the dense evaluation exactly; with rev
// the coefficient order is reversed (reversal polynomial at z = rho).
ScalarTriple entry_triple(const MatrixPolynomial& p, int i, int j, cd z, bool rev) {
  const int d = p.degree();
  const auto at = [&](int k) { return rev ? p.coeff(d - k)(i, j) : p.coeff(k)(i, j); };
  cd v = at(d), d1(0.0, 0.0), d2(0.0, 0.0);
  for (int k = d - 1; k >= 0; --k) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + v;
    v = v * z + at(k);
  }
  return {v, d1, d2};
}

Bands eval_bands(const MatrixPolynomial& p, cd z, bool rev) {
  const int n = p.n(), m = std::max(0, n - 1);
  Bands b;
  b.sub = Vector::Zero(m);  b.dia = Vector::Zero(n);  b.sup = Vector::Zero(m);
  b.sub1 = Vector::Zero(m); b.dia1 = Vector::Zero(n); b.sup1 = Vector::Zero(m);
  b.sub2 = Vector::Zero(m); b.dia2 = Vector::Zero(n); b.sup2 = Vector::Zero(m);
  for (int i = 0; i < n; ++i) {
    const ScalarTriple t = entry_triple(p, i, i, z, rev);
    b.dia(i) = t.value; b.dia1(i) = t.d1; b.dia2(i) = t.d2;
    if (i + 1 < n) {
      const ScalarTriple s = entry_triple(p, i + 1, i, z, rev);
      b.sub(i) = s.value; b.sub1(i) = s.d1; b.sub2(i) = s.d2;
      const ScalarTriple u = entry_triple(p, i, i + 1, z, rev);
      b.sup(i) = u.value; b.sup1(i) = u.d1; b.sup2(i) = u.d2;
    }
  }
  return b;
}

Vector band_mv(const Vector& sub, const Vector& dia, const Vector& sup,
               const Vector& v) {
  const int n = static_cast<int>(dia.size());
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    cd t = dia(i) * v(i);
    if (i > 0) t += sub(i - 1) * v(i - 1);
    if (i + 1 < n) t += sup(i) * v(i + 1);
    r(i) = t;
  }
  return r;
}

Vector band_mv_adjoint(const Vector& sub, const Vector& dia, const Vector& sup,
                       const Vector& v) {
  const int n = static_cast<int>(dia.size());
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    cd t = std::conj(dia(i)) * v(i);
    if (i > 0) t += std::conj(sup(i - 1)) * v(i - 1);
    if (i + 1 < n) t += std::conj(sub(i)) * v(i + 1);
    r(i) = t;
  }
  return r;
}

// Shared assembly of the q ratios from (substituted) subdiagonal triples.
void fill_q_ratios(const Vector& ssub, const Vector& sub1, const Vector& sub2,
                   HymanValues& v) {
  cd qr1(0.0, 0.0), acc(0.0, 0.0);
  for (int j = 0; j < ssub.size(); ++j) {
    const cd t = sub1(j) / ssub(j);
    qr1 += t;
    acc += sub2(j) / ssub(j) - t * t;  // (q'/q)' term
  }
  v.q_ratio1 = qr1;
  v.q_ratio2 = acc + qr1 * qr1;
}

// Hyman recurrences on a dense Hessenberg triple.  Rows 2..n of
// P z = g are solved upward with the tail entry fixed; row 1 then yields b.
HymanValues hyman_from_dense(const EvalTriple& ev) {
  const int n = static_cast<int>(ev.value.rows());
  const Matrix& pm = ev.value;
  Vector ssub(std::max(0, n - 1));
  for (int j = 0; j + 1 < n; ++j) ssub(j) = substitute(pm(j + 1, j));

  const auto back_sub = [&](const Vector& g, cd tail) {
    Vector z = Vector::Zero(n);
    z(n - 1) = tail;
    for (int i = n - 1; i >= 1; --i) {
      cd acc = g(i);
      for (int j = i; j < n; ++j) acc -= pm(i, j) * z(j);
      z(i - 1) = acc / ssub(i - 1);
    }
    return z;
  };
  const auto row0 = [&](const Vector& z) { return (pm.row(0) * z).value(); };

  HymanValues v;
  const Vector x = back_sub(Vector::Zero(n), cd(1.0, 0.0));
  v.b = row0(x);
  const Vector g1 = ev.d1 * x;
  const Vector x1 = back_sub(-g1, cd(0.0, 0.0));
  v.b1 = row0(x1) + g1(0);
  const Vector g2 = 2.0 * (ev.d1 * x1) + ev.d2 * x;
  const Vector x2 = back_sub(-g2, cd(0.0, 0.0));
  v.b2 = row0(x2) + g2(0);

  Vector sd1(ssub.size()), sd2(ssub.size());
  for (int j = 0; j + 1 < n; ++j) {
    sd1(j) = ev.d1(j + 1, j);
    sd2(j) = ev.d2(j + 1, j);
  }
  fill_q_ratios(ssub, sd1, sd2, v);
  v.x_work = x.head(n - 1);
  v.x1_work = x1.head(n - 1);
  v.x2_work = x2.head(n - 1);
  return v;
}

// Same recurrences on tridiagonal bands, O(n) past the band evaluation.
HymanValues hyman_from_bands(const Bands& b) {
  const int n = static_cast<int>(b.dia.size());
  Vector ssub(std::max(0, n - 1));
  for (int j = 0; j + 1 < n; ++j) ssub(j) = substitute(b.sub(j));

  const auto back_sub = [&](const Vector& g, cd tail) {
    Vector z = Vector::Zero(n);
    z(n - 1) = tail;
    for (int i = n - 1; i >= 1; --i) {
      cd acc = g(i) - b.dia(i) * z(i);
      if (i + 1 < n) acc -= b.sup(i) * z(i + 1);
      z(i - 1) = acc / ssub(i - 1);
    }
    return z;
  };
  const auto row0 = [&](const Vector& z) {
    cd t = b.dia(0) * z(0);
    if (n > 1) t += b.sup(0) * z(1);
    return t;
  };

  HymanValues v;
  const Vector x = back_sub(Vector::Zero(n), cd(1.0, 0.0));
  v.b = row0(x);
  const Vector g1 = band_mv(b.sub1, b.dia1, b.sup1, x);
  const Vector x1 = back_sub(-g1, cd(0.0, 0.0));
  v.b1 = row0(x1) + g1(0);
  const Vector g2 = 2.0 * band_mv(b.sub1, b.dia1, b.sup1, x1) +
                    band_mv(b.sub2, b.dia2, b.sup2, x);
  const Vector x2 = back_sub(-g2, cd(0.0, 0.0));
  v.b2 = row0(x2) + g2(0);

  fill_q_ratios(ssub, b.sub1, b.sub2, v);
  v.x_work = x.head(n - 1);
  v.x1_work = x1.head(n - 1);
  v.x2_work = x2.head(n - 1);
  return v;
}

}  // namespace

HymanValues hyman_eval(const MatrixPolynomial& p, cd z, bool at_reversal) {
  if (p.structure() == Structure::Tridiagonal)
    return hyman_from_bands(eval_bands(p, z, at_reversal));
  const EvalTriple ev =
      at_reversal ? eval_reversal(p, z) : eval_with_derivatives(p, z);
  return hyman_from_dense(ev);
}

std::optional<LaguerreSums> laguerre_correction_hyman(const HymanValues& v,
                                                      int nd_total, cd lambda) {
  if (v.b == cd(0.0, 0.0)) return std::nullopt;
  // p = +-b q, so p'/p = b'/b + q'/q and p''/p = b''/b + 2(b'/b)(q'/q) + q''/q.
  const cd g1 = v.b1 / v.b + v.q_ratio1;
  const cd g2 = (v.b2 + 2.0 * v.b1 * v.q_ratio1 + v.b * v.q_ratio2) / v.b;
  LaguerreSums s;
  if (std::abs(lambda) <= 1.0) {
    s.s1 = g1;
    s.s2 = g1 * g1 - g2;
  } else {
    const cd rho = cd(1.0, 0.0) / lambda;
    const cd total(static_cast<double>(nd_total), 0.0);
    const cd u2 = g1 * g1 - g2;
    s.s1 = rho * (total - rho * g1);
    s.s2 = rho * rho * (total - 2.0 * rho * g1 + rho * rho * u2);
  }
  return s;
}

QRPFactors hessenberg_qr(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  QRPFactors f;
  f.q = Matrix::Identity(n, n);
  f.r = m;
  f.perm.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) f.perm[static_cast<size_t>(j)] = j;
  for (int k = 0; k + 1 < n; ++k) {
    double c;
    cd s, r;
    complex_givens(f.r(k, k), f.r(k + 1, k), &c, &s, &r);
    for (int j = k + 1; j < n; ++j) {
      const cd a = f.r(k, j), b = f.r(k + 1, j);
      f.r(k, j) = c * a + s * b;
      f.r(k + 1, j) = -std::conj(s) * a + c * b;
    }
    f.r(k, k) = r;
    f.r(k + 1, k) = cd(0.0, 0.0);
    // Q <- Q G_k*, acting on columns k and k+1.
    for (int i = 0; i < n; ++i) {
      const cd a = f.q(i, k), b = f.q(i, k + 1);
      f.q(i, k) = c * a + std::conj(s) * b;
      f.q(i, k + 1) = -s * a + c * b;
    }
  }
  return f;
}

std::optional<EigenvectorPair> eigenvectors_hessenberg(const QRPFactors& f,
                                                       int j_min) {
  const int n = f.n();
  // Leading solve R(1:j-1,1:j-1) xhat = -R(1:j-1,j), xhat(j) = 1.
  Vector x = Vector::Zero(n);
  x(j_min) = cd(1.0, 0.0);
  for (int i = j_min - 1; i >= 0; --i) {
    cd acc = f.r(i, j_min);
    for (int k = i + 1; k < j_min; ++k) acc += f.r(i, k) * x(k);
    if (f.r(i, i) == cd(0.0, 0.0)) return std::nullopt;
    x(i) = -acc / f.r(i, i);
  }
  // Trailing conjugate-transposed solve
  // R(j+1:n,j+1:n)* yhat(j+1:n) = -R(j,j+1:n)*, yhat(j) = 1; y = Q yhat.
  Vector yh = Vector::Zero(n);
  yh(j_min) = cd(1.0, 0.0);
  for (int i = j_min + 1; i < n; ++i) {
    cd acc = std::conj(f.r(j_min, i));
    for (int k = j_min + 1; k < i; ++k) acc += std::conj(f.r(k, i)) * yh(k);
    if (f.r(i, i) == cd(0.0, 0.0)) return std::nullopt;
    yh(i) = -acc / std::conj(f.r(i, i));
  }
  if (!x.allFinite() || !yh.allFinite()) return std::nullopt;
  Vector y = f.q * yh;
  normalize_in_place(x);
  normalize_in_place(y);
  return EigenvectorPair{std::move(x), std::move(y)};
}

namespace {

// ---------------------------------------------------------------------------
// Banded factorization state for the tridiagonal engine: R as three bands,
// Q as the stored rotation sequence.  Everything here is O(n).

struct TriFactors {
  int n = 0;
  Vector r0, r1, r2;        // diagonal, first, second superdiagonal of R
  std::vector<double> cs;   // rotation cosines (real)
  std::vector<cd> sn;       // rotation sines
};

TriFactors tri_qr(const Vector& sub, const Vector& dia, const Vector& sup) {
  const int n = static_cast<int>(dia.size());
  TriFactors f;
  f.n = n;
  f.r0 = Vector::Zero(n);
  f.r1 = Vector::Zero(std::max(0, n - 1));
  f.r2 = Vector::Zero(std::max(0, n - 2));
  f.cs.assign(static_cast<size_t>(std::max(0, n - 1)), 1.0);
  f.sn.assign(static_cast<size_t>(std::max(0, n - 1)), cd(0.0, 0.0));

  cd alpha = dia(0);
  cd beta = n > 1 ? sup(0) : cd(0.0, 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    double c;
    cd s, r;
    complex_givens(alpha, sub(k), &c, &s, &r);
    f.cs[static_cast<size_t>(k)] = c;
    f.sn[static_cast<size_t>(k)] = s;
    f.r0(k) = r;
    const cd dk1 = dia(k + 1);
    f.r1(k) = c * beta + s * dk1;
    const cd next_alpha = -std::conj(s) * beta + c * dk1;
    const cd sk1 = (k + 2 < n) ? sup(k + 1) : cd(0.0, 0.0);
    if (k + 2 < n) f.r2(k) = s * sk1;  // fill-in row k
    alpha = next_alpha;
    beta = c * sk1;
  }
  f.r0(n - 1) = alpha;
  return f;
}

// b <- Q* b (rotations applied forward) and v <- Q v (adjoints backward).
void apply_qstar(const TriFactors& f, Vector& b) {
  for (int k = 0; k + 1 < f.n; ++k) {
    const double c = f.cs[static_cast<size_t>(k)];
    const cd s = f.sn[static_cast<size_t>(k)];
    const cd a = b(k), t = b(k + 1);
    b(k) = c * a + s * t;
    b(k + 1) = -std::conj(s) * a + c * t;
  }
}

void apply_q(const TriFactors& f, Vector& v) {
  for (int k = f.n - 2; k >= 0; --k) {
    const double c = f.cs[static_cast<size_t>(k)];
    const cd s = f.sn[static_cast<size_t>(k)];
    const cd a = v(k), t = v(k + 1);
    v(k) = c * a - s * t;
    v(k + 1) = std::conj(s) * a + c * t;
  }
}

cd tri_guard(const TriFactors& f, int i) {
  const cd d = f.r0(i);
  if (d != cd(0.0, 0.0)) return d;
  double scale = eps * f.r0.cwiseAbs().maxCoeff();
  if (scale == 0.0) scale = std::numeric_limits<double>::min();
  return cd(scale, 0.0);
}

// R z = w and R* z = w with guarded pivots, banded.
Vector tri_solve_upper(const TriFactors& f, Vector w) {
  for (int i = f.n - 1; i >= 0; --i) {
    cd acc = w(i);
    if (i + 1 < f.n) acc -= f.r1(i) * w(i + 1);
    if (i + 2 < f.n) acc -= f.r2(i) * w(i + 2);
    w(i) = acc / tri_guard(f, i);
  }
  return w;
}

Vector tri_solve_adjoint(const TriFactors& f, Vector w) {
  for (int i = 0; i < f.n; ++i) {
    cd acc = w(i);
    if (i >= 1) acc -= std::conj(f.r1(i - 1)) * w(i - 1);
    if (i >= 2) acc -= std::conj(f.r2(i - 2)) * w(i - 2);
    w(i) = acc / std::conj(tri_guard(f, i));
  }
  return w;
}

Vector tri_apply_r(const TriFactors& f, const Vector& x) {
  Vector r(f.n);
  for (int i = 0; i < f.n; ++i) {
    cd t = f.r0(i) * x(i);
    if (i + 1 < f.n) t += f.r1(i) * x(i + 1);
    if (i + 2 < f.n) t += f.r2(i) * x(i + 2);
    r(i) = t;
  }
  return r;
}

// M z = b through the factors: z = R^-1 Q* b.
Vector tri_solve_through(const TriFactors& f, Vector b) {
  apply_qstar(f, b);
  return tri_solve_upper(f, std::move(b));
}

// Split solves around diagonal entry j (banded analogue of the Hessenberg
// eigenvector extraction).  nullopt on an exactly singular block.
std::optional<EigenvectorPair> tri_eigenvectors(const TriFactors& f, int j) {
  const int n = f.n;
  Vector x = Vector::Zero(n);
  x(j) = cd(1.0, 0.0);
  for (int i = j - 1; i >= 0; --i) {
    cd acc(0.0, 0.0);
    if (i == j - 1) acc = f.r1(i);
    else if (i == j - 2) acc = f.r2(i);
    if (i + 1 < j) acc += f.r1(i) * x(i + 1);
    if (i + 2 < j) acc += f.r2(i) * x(i + 2);
    if (f.r0(i) == cd(0.0, 0.0)) return std::nullopt;
    x(i) = -acc / f.r0(i);
  }
  Vector yh = Vector::Zero(n);
  yh(j) = cd(1.0, 0.0);
  for (int i = j + 1; i < n; ++i) {
    cd acc(0.0, 0.0);
    if (i == j + 1) acc = std::conj(f.r1(j));
    else if (i == j + 2) acc = std::conj(f.r2(j));
    if (i - 1 > j) acc += std::conj(f.r1(i - 1)) * yh(i - 1);
    if (i - 2 > j) acc += std::conj(f.r2(i - 2)) * yh(i - 2);
    if (f.r0(i) == cd(0.0, 0.0)) return std::nullopt;
    yh(i) = -acc / std::conj(f.r0(i));
  }
  if (!x.allFinite() || !yh.allFinite()) return std::nullopt;
  Vector y = yh;
  apply_q(f, y);
  normalize_in_place(x);
  normalize_in_place(y);
  return EigenvectorPair{std::move(x), std::move(y)};
}

// Banded inverse iteration on R*R and Q R R* Q* for the smallest singular
// pair; mirrors the dense fallback but stays O(n) per sweep.
SingularVectors tri_singular_vectors(const TriFactors& f) {
  const int n = f.n;
  SingularVectors out;
  if (f.r0.cwiseAbs().maxCoeff() == 0.0) {  // M is exactly zero
    out.x = Vector::Unit(n, 0);
    out.y = Vector::Unit(n, 0);
    out.sigma = 0.0;
    return out;
  }

  Vector x = Vector::Zero(n);
  x(n - 1) = cd(1.0, 0.0);
  for (int i = n - 2; i >= 0; --i) {
    cd acc(0.0, 0.0);
    if (i == n - 2) acc = -f.r1(i);
    else if (i == n - 3) acc = -f.r2(i);
    if (i + 1 < n - 1) acc -= f.r1(i) * x(i + 1);
    if (i + 2 < n - 1) acc -= f.r2(i) * x(i + 2);
    acc /= tri_guard(f, i);
    x(i) = std::isfinite(acc.real()) && std::isfinite(acc.imag()) ? acc : cd(0.0, 0.0);
  }
  normalize_in_place(x);
  Vector y = Vector::Zero(n);
  y(n - 1) = cd(1.0, 0.0);
  apply_q(f, y);  // last column of Q
  normalize_in_place(y);

  bool x_done = false, y_done = false;
  for (int it = 0; it < 20 && !(x_done && y_done); ++it) {
    if (!x_done) {
      Vector nx = tri_solve_upper(f, tri_solve_adjoint(f, x));
      const double nn = nx.stableNorm();
      if (nn > 0.0 && nx.allFinite()) {
        normalize_in_place(nx);
        x_done = std::abs(nx.dot(x)) >= 1.0 - 1e-12;
        x = nx;
      } else {
        x_done = true;
      }
    }
    if (!y_done) {
      Vector ny = y;
      apply_qstar(f, ny);
      ny = tri_solve_adjoint(f, tri_solve_upper(f, std::move(ny)));
      apply_q(f, ny);
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
  out.sigma = tri_apply_r(f, x).stableNorm();
  return out;
}

double scaled_residual(const Vector& r, double scale, double vn) {
  const double rn = r.stableNorm();
  if (rn == 0.0) return 0.0;
  return rn / (scale * vn);
}

// ---------------------------------------------------------------------------

class HessenbergEngine {
 public:
  explicit HessenbergEngine(const MatrixPolynomial& p)
      : p_(p), w_(coefficient_weights(p)) {}

  void factor(cd lambda) {
    if (std::abs(lambda) <= 1.0) {
      ev_ = eval_with_derivatives(p_, lambda);
      f_ = hessenberg_qr(ev_.value);
      scale_ = w_.alpha(std::abs(lambda));
    } else {
      const cd rho = cd(1.0, 0.0) / lambda;
      ev_ = eval_reversal(p_, rho);
      f_ = hessenberg_qr(ev_.value);
      f_.at_reversal = true;
      scale_ = w_.alpha_rev(std::abs(rho));
    }
    jmin_ = 0;
    for (int j = 1; j < f_.n(); ++j)
      if (std::abs(f_.r(j, j)) < std::abs(f_.r(jmin_, jmin_))) jmin_ = j;
  }

  double alpha_scale() const { return scale_; }

  // Criterion 1 scans the whole diagonal (no pivoting keeps no ordering);
  // criterion 2 runs the same three probes as the dense engine.
  std::optional<StopReason> stopping(double scale, const Vector& probe) const {
    const int n = f_.n();
    const double tau = scale * eps;
    if (std::abs(f_.r(jmin_, jmin_)) < tau) return StopReason::Criterion1;
    Vector ones = Vector::Ones(n);
    normalize_in_place(ones);
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& b : {ones, probe, Vector(f_.q.col(n - 1))}) {
      const double zn = solve_through(f_, b).stableNorm();
      if (zn > 0.0) best = std::min(best, b.stableNorm() / zn);
    }
    if (best < tau) return StopReason::Criterion2;
    return std::nullopt;
  }

  std::optional<LaguerreSums> correction(cd lambda) const {
    return laguerre_correction_hyman(hyman_from_dense(ev_),
                                     p_.n() * p_.degree(), lambda);
  }

  std::pair<Vector, Vector> vectors(StopReason status) const {
    if (status == StopReason::Criterion1) {
      if (auto pair = eigenvectors_hessenberg(f_, jmin_)) return {pair->x, pair->y};
    }
    const SingularVectors sv = singular_vectors(f_);
    return {sv.x, sv.y};
  }

  ErrorReport report(cd lambda, const Vector& x, const Vector& y) const {
    return error_report(p_, lambda, x, y, w_);
  }

 private:
  const MatrixPolynomial& p_;
  CoefficientWeights w_;
  EvalTriple ev_;
  QRPFactors f_;
  double scale_ = 0.0;
  int jmin_ = 0;
};

class TridiagonalEngine {
 public:
  explicit TridiagonalEngine(const MatrixPolynomial& p)
      : p_(p), w_(coefficient_weights(p)) {}

  void factor(cd lambda) {
    const bool rev = std::abs(lambda) > 1.0;
    const cd z = rev ? cd(1.0, 0.0) / lambda : lambda;
    bands_ = eval_bands(p_, z, rev);
    f_ = tri_qr(bands_.sub, bands_.dia, bands_.sup);
    scale_ = rev ? w_.alpha_rev(std::abs(z)) : w_.alpha(std::abs(z));
    jmin_ = 0;
    for (int j = 1; j < f_.n; ++j)
      if (std::abs(f_.r0(j)) < std::abs(f_.r0(jmin_))) jmin_ = j;
  }

  double alpha_scale() const { return scale_; }

  std::optional<StopReason> stopping(double scale, const Vector& probe) const {
    const int n = f_.n;
    const double tau = scale * eps;
    if (std::abs(f_.r0(jmin_)) < tau) return StopReason::Criterion1;
    Vector ones = Vector::Ones(n);
    normalize_in_place(ones);
    Vector qn = Vector::Zero(n);
    qn(n - 1) = cd(1.0, 0.0);
    apply_q(f_, qn);  // last column of Q
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& b : {ones, probe, qn}) {
      const double zn = tri_solve_through(f_, b).stableNorm();
      if (zn > 0.0) best = std::min(best, b.stableNorm() / zn);
    }
    if (best < tau) return StopReason::Criterion2;
    return std::nullopt;
  }

  std::optional<LaguerreSums> correction(cd lambda) const {
    return laguerre_correction_hyman(hyman_from_bands(bands_),
                                     p_.n() * p_.degree(), lambda);
  }

  std::pair<Vector, Vector> vectors(StopReason status) const {
    if (status == StopReason::Criterion1) {
      if (auto pair = tri_eigenvectors(f_, jmin_)) return {pair->x, pair->y};
    }
    const SingularVectors sv = tri_singular_vectors(f_);
    return {sv.x, sv.y};
  }

  // Banded mirror of the dense error report so one eigenpair costs O(d n).
  ErrorReport report(cd lambda, const Vector& x, const Vector& y) const {
    const double xn = x.stableNorm();
    const double yn = y.stableNorm();
    const bool direct = std::abs(lambda) <= 1.0;
    const cd z = direct ? lambda : cd(1.0, 0.0) / lambda;
    const Bands b = eval_bands(p_, z, !direct);
    const double scale = direct ? w_.alpha(std::abs(lambda)) : w_.alpha_rev(std::abs(z));

    ErrorReport er;
    er.eta_right = scaled_residual(band_mv(b.sub, b.dia, b.sup, x), scale, xn);
    er.eta_left = scaled_residual(band_mv_adjoint(b.sub, b.dia, b.sup, y), scale, yn);

    double numerator, denominator;
    if (lambda == cd(0.0, 0.0)) {
      numerator = xn * yn;
      denominator = std::abs(y.dot(x));
    } else if (direct) {
      numerator = scale * xn * yn;
      denominator =
          std::abs(lambda) * std::abs(y.dot(band_mv(b.sub1, b.dia1, b.sup1, x)));
    } else {
      const Vector mix = static_cast<double>(p_.degree()) *
                             band_mv(b.sub, b.dia, b.sup, x) -
                         z * band_mv(b.sub1, b.dia1, b.sup1, x);
      numerator = scale * xn * yn;
      denominator = std::abs(y.dot(mix));
    }
    const bool bad = !(denominator > eps * numerator);
    er.kappa_unreliable = bad;
    er.kappa = bad ? 1.0 / eps : numerator / denominator;
    return er;
  }

 private:
  const MatrixPolynomial& p_;
  CoefficientWeights w_;
  Bands bands_;
  TriFactors f_;
  double scale_ = 0.0;
  int jmin_ = 0;
};

}  // namespace

std::vector<EigenResult> solve_structured(const MatrixPolynomial& p,
                                          const SolveOptions& opts) {
  if (p.structure() != Structure::Hessenberg &&
      p.structure() != Structure::Tridiagonal)
    throw std::invalid_argument(
        "solve_structured needs a Hessenberg or tridiagonal structure tag");
  const EstimateSet est = initial_estimates(p);
  if (p.structure() == Structure::Tridiagonal) {
    TridiagonalEngine eng(p);
    return detail::run_laguerre(p, eng, est, opts);
  }
  HessenbergEngine eng(p);
  return detail::run_laguerre(p, eng, est, opts);
}

}  // namespace polyeig
