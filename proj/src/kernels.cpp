#include "qps/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef QPS_HAVE_OPENMP
#include <omp.h>
#endif

namespace qps::kernels {

namespace {
int g_threads = 0;

void check_matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  if (a.cols() != b.rows()) throw NumericsError("matmul: inner dimension mismatch");
  if (c.rows() != a.rows() || c.cols() != b.cols()) c = ComplexMatrix(a.rows(), b.cols());
  std::fill(c.data(), c.data() + c.rows() * c.cols(), cplx(0.0));
}

inline void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c, std::size_t i) {
  const std::size_t n = b.cols();
  cplx* ci = c.data() + i * n;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const cplx aik = a(i, k);
    if (aik == cplx(0.0)) continue;
    const cplx* bk = b.data() + k * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
  }
}

inline void gram_row(const ComplexMatrix& b, ComplexMatrix& g, std::size_t i) {
  const std::size_t n = b.cols();
  cplx* gi = g.data() + i * n;
  for (std::size_t k = 0; k < b.rows(); ++k) {
    const cplx bki = std::conj(b(k, i));
    if (bki == cplx(0.0)) continue;
    const cplx* bk = b.data() + k * n;
    for (std::size_t j = i; j < n; ++j) gi[j] += bki * bk[j];
  }
}

void mirror_upper(ComplexMatrix& g) {
  const std::size_t n = g.rows();
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = cplx(g(i, i).real(), 0.0);
    for (std::size_t j = 0; j < i; ++j) g(i, j) = std::conj(g(j, i));
  }
}

inline cplx exp_sum_point(const std::vector<cplx>& c, double h, cplx z) {
  const cplx q = std::exp(cplx(0.0, 2.0 * kPi * h) * z);
  cplx acc = q, s = 0.0;
  for (const cplx& cj : c) {
    s += cj * acc;
    acc *= q;
  }
  return s;
}

// Adds the contribution of points [p0, p1) to part[0..n).
inline void adjoint_block(const std::vector<cplx>& g, const std::vector<cplx>& z, double h, std::size_t p0,
                          std::size_t p1, std::vector<cplx>& part) {
  const std::size_t n = part.size();
  for (std::size_t p = p0; p < p1; ++p) {
    if (g[p] == cplx(0.0)) continue;
    const cplx q = std::exp(cplx(0.0, -2.0 * kPi * h) * std::conj(z[p]));
    cplx acc = g[p] * q;
    for (std::size_t j = 0; j < n; ++j) {
      part[j] += acc;
      acc *= q;
    }
  }
}

void check_adjoint(const std::vector<cplx>& g, const std::vector<cplx>& z) {
  if (g.size() != z.size()) throw NumericsError("exp_sum_adjoint: size mismatch");
}
}  // namespace

void set_threads(int n) {
  g_threads = std::max(0, n);
#ifdef QPS_HAVE_OPENMP
  if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int threads() {
#ifdef QPS_HAVE_OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  check_matmul(a, b, c);
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
}

void gram(const ComplexMatrix& b, ComplexMatrix& g) {
  g = ComplexMatrix(b.cols(), b.cols());
  for (std::size_t i = 0; i < b.cols(); ++i) gram_row(b, g, i);
  mirror_upper(g);
}

void exp_sum(const std::vector<cplx>& c, double h, const std::vector<cplx>& z, std::vector<cplx>& out) {
  out.assign(z.size(), 0.0);
  for (std::size_t p = 0; p < z.size(); ++p) out[p] = exp_sum_point(c, h, z[p]);
}

void exp_sum_adjoint(const std::vector<cplx>& g, const std::vector<cplx>& z, double h, std::size_t n,
                     std::vector<cplx>& out) {
  check_adjoint(g, z);
  out.assign(n, 0.0);
  std::vector<cplx> part(n);
  for (std::size_t p0 = 0; p0 < z.size(); p0 += kAdjointBlock) {
    std::fill(part.begin(), part.end(), cplx(0.0));
    adjoint_block(g, z, h, p0, std::min(z.size(), p0 + kAdjointBlock), part);
    for (std::size_t j = 0; j < n; ++j) out[j] += part[j];
  }
}

}  // namespace serial

namespace parallel {

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  check_matmul(a, b, c);
  const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < rows; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
}

void gram(const ComplexMatrix& b, ComplexMatrix& g) {
  g = ComplexMatrix(b.cols(), b.cols());
  const auto n = static_cast<long>(b.cols());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) gram_row(b, g, static_cast<std::size_t>(i));
  mirror_upper(g);
}

void exp_sum(const std::vector<cplx>& c, double h, const std::vector<cplx>& z, std::vector<cplx>& out) {
  out.assign(z.size(), 0.0);
  const auto np = static_cast<long>(z.size());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < np; ++p) out[p] = exp_sum_point(c, h, z[p]);
}

void exp_sum_adjoint(const std::vector<cplx>& g, const std::vector<cplx>& z, double h, std::size_t n,
                     std::vector<cplx>& out) {
  check_adjoint(g, z);
  const std::size_t nblocks = (z.size() + kAdjointBlock - 1) / kAdjointBlock;
  std::vector<std::vector<cplx>> parts(nblocks, std::vector<cplx>(n));
  const auto nb = static_cast<long>(nblocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < nb; ++b) {
    const std::size_t p0 = static_cast<std::size_t>(b) * kAdjointBlock;
    adjoint_block(g, z, h, p0, std::min(z.size(), p0 + kAdjointBlock), parts[static_cast<std::size_t>(b)]);
  }
  out.assign(n, 0.0);
  for (const auto& part : parts)
    for (std::size_t j = 0; j < n; ++j) out[j] += part[j];
}

}  // namespace parallel

}  // namespace qps::kernels
