#include "qps/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qps/kernels.hpp"

namespace qps {

// ---------------------------------------------------------------- matrices

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw NumericsError("ComplexMatrix: entry count does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::max_abs_offdiag() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw NumericsError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw NumericsError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c;
  kernels::parallel::matmul(a, b, c);
  return c;
}

std::vector<cplx> apply(const ComplexMatrix& a, const std::vector<cplx>& x) {
  if (x.size() != a.cols()) throw NumericsError("apply: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double QuadratureRule::mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

// ---------------------------------------------------------------- polynomials

Poly::Poly(std::vector<cplx> coeffs, std::size_t max_deg) : c(std::move(coeffs)), max_degree(max_deg) {
  if (c.size() > max_degree + 1) c.resize(max_degree + 1);
}

Poly::Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)), max_degree(c.empty() ? 0 : c.size() - 1) {}

cplx Poly::operator()(cplx z) const {
  cplx s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

Poly poly_mul(const Poly& p, const Poly& q, std::size_t n) {
  if (p.c.empty() || q.c.empty()) return Poly({}, n);
  const std::size_t deg = std::min(n, p.degree() + q.degree());
  std::vector<cplx> r(deg + 1);
  for (std::size_t i = 0; i < p.c.size() && i <= deg; ++i) {
    if (p.c[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < q.c.size() && i + j <= deg; ++j) r[i + j] += p.c[i] * q.c[j];
  }
  return Poly(std::move(r), n);
}

Poly poly_compose(const Poly& p, const Poly& q, std::size_t n) {
  if (p.c.empty()) return Poly({}, n);
  // Horner in truncated arithmetic; exact up to degree n because q has no
  // negative powers, so discarded high-degree terms never feed back.
  Poly r({p.c.back()}, n);
  for (std::size_t k = p.c.size() - 1; k-- > 0;) {
    r = poly_mul(r, q, n);
    if (r.c.empty()) r.c.push_back(0.0);
    r.c[0] += p.c[k];
  }
  return r;
}

cplx cpow_principal(cplx w, double p) {
  if (w == cplx(0.0)) return p == 0.0 ? cplx(1.0) : cplx(0.0);
  return std::exp(p * std::log(w));
}

// ---------------------------------------------------------------- eigenvalues

namespace {

void hessenberg_reduce(ComplexMatrix& h) {
  const std::size_t n = h.rows();
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0);
    const cplx alpha = -phase * xnorm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // H <- P H with P = I - 2 v v^H
    for (std::size_t j = k; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    // H <- H P
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cplx s;
};

Givens make_givens(cplx a, cplx b) {
  if (b == cplx(0.0)) return {1.0, 0.0};
  if (a == cplx(0.0)) return {0.0, std::conj(b) / std::abs(b)};
  const double aa = std::abs(a);
  const double rho = std::hypot(aa, std::abs(b));
  return {aa / rho, (a / aa) * std::conj(b) / rho};
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx half = 0.5 * (a - d);
  const cplx disc = std::sqrt(half * half + b * c);
  const cplx m1 = 0.5 * (a + d) + disc;
  const cplx m2 = 0.5 * (a + d) - disc;
  return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

}  // namespace

std::vector<cplx> eigenvalues(const ComplexMatrix& m) {
  if (!m.square()) throw NumericsError("eigenvalues: matrix is not square");
  if (!m.all_finite()) throw NumericsError("eigenvalues: non-finite entries");
  const std::size_t n = m.rows();
  std::vector<cplx> eig;
  if (n == 0) return eig;
  ComplexMatrix h = m;
  hessenberg_reduce(h);
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(h.max_abs(), std::numeric_limits<double>::min());
  const int max_iter = 60;
  std::vector<Givens> rot(n);

  long hi = static_cast<long>(n) - 1;
  int iter = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    long l = hi;
    for (; l > 0; --l) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = scale;
      if (std::abs(h(l, l - 1)) <= eps * s) {
        h(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter) throw NumericsError("eigenvalues: QR iteration did not converge");
    cplx mu;
    if (iter % 10 == 0) {
      // exceptional shift to break cycles
      mu = h(hi, hi) + cplx(std::abs(h(hi, hi - 1).real()) + std::abs(h(hi - 1, std::max(l, hi - 2)).real()), 0.0);
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }
    for (long k = l; k <= hi; ++k) h(k, k) -= mu;
    for (long k = l; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (long j = k; j <= hi; ++j) {
        const cplx x = h(k, j), y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (long k = l; k < hi; ++k) {
      const Givens g = rot[k];
      const long top = std::min(k + 2, hi);
      for (long i = l; i <= top; ++i) {
        const cplx x = h(i, k), y = h(i, k + 1);
        h(i, k) = x * g.c + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (long k = l; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

// ---------------------------------------------------------------- Hermitian largest eigenvalue

namespace {

void hermitian_tridiagonalize(ComplexMatrix& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.rows();
  std::vector<cplx> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    const cplx x0 = a(k + 1, k);
    double tail = xnorm * xnorm - std::norm(x0);
    if (xnorm == 0.0 || tail <= 0.0) continue;
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0);
    const cplx alpha = -phase * xnorm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // p = A v on the trailing block, K = v^H p
    cplx kk = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      p[i] = s;
      kk += std::conj(v[i]) * s;
    }
    const double kr = kk.real();
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kr * v[i];
    // A <- A - 2 (v w^H + w v^H), w = p - K v
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx vi2 = 2.0 * v[i], pi2 = 2.0 * p[i];
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= vi2 * std::conj(p[j]) + pi2 * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = a(k, i) = 0.0;
  }
  d.resize(n);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(a(i + 1, i));
}

// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x.
std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  std::size_t count = 0;
  double q = d[0] - x;
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (std::abs(q) < tiny) q = -tiny;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_max_eigenvalue(const std::vector<double>& d, const std::vector<double>& e) {
  const std::size_t n = d.size();
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += e[i - 1];
    if (i + 1 < n) r += e[i];
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double span = std::max(std::abs(lo), std::abs(hi));
  if (span == 0.0) return 0.0;
  lo -= 1e-12 * span;
  hi += 1e-12 * span;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * span; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid) == n) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double hermitian_max_eigenvalue(const ComplexMatrix& h) {
  if (!h.square()) throw NumericsError("hermitian_max_eigenvalue: matrix is not square");
  if (h.rows() == 0) return 0.0;
  ComplexMatrix a = h;
  std::vector<double> d, e;
  hermitian_tridiagonalize(a, d, e);
  return tridiagonal_max_eigenvalue(d, e);
}

double operator_norm(const ComplexMatrix& m, const std::vector<double>& w) {
  if (!m.square() || w.size() != m.rows()) throw NumericsError("operator_norm: dimension mismatch");
  const std::size_t n = m.rows();
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] > 0.0)) throw NumericsError("operator_norm: weights must be positive");
    sw[i] = std::sqrt(w[i]);
  }
  // Split into blocks coupled through the sparsity pattern: rows are nodes
  // 0..n-1, columns n..2n-1, joined when the entry is nonzero. The norm is the
  // largest block norm.
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool any = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != cplx(0.0)) {
        any = true;
        const std::size_t a = find(i), b = find(n + j);
        if (a != b) parent[a] = b;
      }
  if (!any) return 0.0;
  std::vector<std::vector<std::size_t>> rows_of(2 * n), cols_of(2 * n);
  for (std::size_t i = 0; i < n; ++i) rows_of[find(i)].push_back(i);
  for (std::size_t j = 0; j < n; ++j) cols_of[find(n + j)].push_back(j);
  double best = 0.0;
  for (std::size_t r = 0; r < 2 * n; ++r) {
    const auto& R = rows_of[r];
    const auto& C = cols_of[r];
    if (R.empty() || C.empty()) continue;
    ComplexMatrix b(R.size(), C.size());
    for (std::size_t a = 0; a < R.size(); ++a)
      for (std::size_t c = 0; c < C.size(); ++c) b(a, c) = sw[R[a]] * m(R[a], C[c]) / sw[C[c]];
    ComplexMatrix g;
    kernels::parallel::gram(b, g);
    best = std::max(best, std::sqrt(std::max(0.0, hermitian_max_eigenvalue(g))));
  }
  return best;
}

// ---------------------------------------------------------------- quadrature

void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>& first) {
  const std::size_t n = d.size();
  first.assign(n, 0.0);
  if (n == 0) return;
  first[0] = 1.0;
  e.resize(n, 0.0);
  if (n > 1) e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw NumericsError("tridiagonal_eigen: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
        double s = 1.0, c = 1.0, p = 0.0;
        std::size_t i = m;
        bool early = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            early = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = first[i + 1];
          first[i + 1] = s * first[i] + c * f;
          first[i] = c * first[i] - s * f;
        }
        if (early) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> d2(n), f2(n);
  for (std::size_t k = 0; k < n; ++k) {
    d2[k] = d[idx[k]];
    f2[k] = first[idx[k]];
  }
  d = std::move(d2);
  first = std::move(f2);
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw NumericsError("gauss_legendre: need at least one node");
  QuadratureRule q;
  q.domain = Domain::interval;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    // recompute derivative at the converged node
    double p1 = 1.0, p2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    q.nodes[i] = xm - xl * z;
    q.nodes[n - 1 - i] = xm + xl * z;
    q.weights[i] = q.weights[n - 1 - i] = w;
  }
  return q;
}

QuadratureRule gauss_jacobi(std::size_t n, double a, double b) {
  if (n == 0) throw NumericsError("gauss_jacobi: need at least one node");
  if (a <= -1.0 || b <= -1.0) throw NumericsError("gauss_jacobi: exponents must exceed -1");
  std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  d[0] = (b - a) / (ab + 2.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    d[k] = (b * b - a * a) / (s * (s + 2.0));
    double num, den;
    if (k == 1) {
      num = 4.0 * (1.0 + a) * (1.0 + b);
      den = (2.0 + ab) * (2.0 + ab) * (3.0 + ab);
    } else {
      num = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab);
      den = s * s * (s + 1.0) * (s - 1.0);
    }
    e[k - 1] = std::sqrt(num / den);
  }
  std::vector<double> first;
  tridiagonal_eigen(d, e, first);
  const double mu0 =
      std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule q;
  q.domain = Domain::interval;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    q.nodes[k] = d[k];
    q.weights[k] = mu0 * first[k] * first[k];
  }
  return q;
}

QuadratureRule disk_quadrature(double alpha, std::size_t n_r, std::size_t n_theta) {
  if (!(alpha > -1.0)) throw NumericsError("disk_quadrature: alpha must exceed -1");
  if (n_r == 0 || n_theta == 0) throw NumericsError("disk_quadrature: empty rule");
  // Radial part in s = r^2, where (1-|z|^2)^alpha dA = (1/2)(1-s)^alpha ds dtheta.
  const QuadratureRule gj = gauss_jacobi(n_r, alpha, 0.0);
  const double to_unit = std::pow(2.0, -(alpha + 1.0));
  QuadratureRule q;
  q.domain = Domain::disk_weighted;
  q.alpha = alpha;
  q.nodes.reserve(n_r * n_theta);
  q.weights.reserve(n_r * n_theta);
  const double dth = 2.0 * kPi / static_cast<double>(n_theta);
  for (std::size_t i = 0; i < n_r; ++i) {
    const double s = 0.5 * (gj.nodes[i].real() + 1.0);
    const double r = std::sqrt(s);
    const double ws = gj.weights[i] * to_unit;
    for (std::size_t k = 0; k < n_theta; ++k) {
      const double th = (static_cast<double>(k) + 0.5) * dth;
      q.nodes.push_back(std::polar(r, th));
      q.weights.push_back(0.5 * ws * dth);
    }
  }
  return q;
}

}  // namespace qps
