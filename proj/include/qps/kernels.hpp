#pragma once

// Hot loops in two flavours: a plain serial reference and an OpenMP version.
// Both produce the same summation order per output entry, so results agree to
// the last bit; the test suite and the benchmark compare them.

#include <cstddef>
#include <vector>

#include "qps/numerics.hpp"

namespace qps::kernels {

// Threads used by the parallel kernels (0 = OpenMP default).
void set_threads(int n);
int threads();

namespace serial {
// C = A B. Zero entries of A are skipped, so sparse-pattern factors are cheap.
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
// G = B^H B.
void gram(const ComplexMatrix& b, ComplexMatrix& g);
// out[p] = sum_j c_j exp(2 pi i t_j z_p) for uniform nodes t_j = (j+1) h.
void exp_sum(const std::vector<cplx>& c, double h, const std::vector<cplx>& z, std::vector<cplx>& out);
// out[j] = sum_p g_p exp(-2 pi i t_j conj(z_p)) for t_j = (j+1) h, j < n.
void exp_sum_adjoint(const std::vector<cplx>& g, const std::vector<cplx>& z, double h, std::size_t n,
                     std::vector<cplx>& out);
}  // namespace serial

namespace parallel {
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
void gram(const ComplexMatrix& b, ComplexMatrix& g);
void exp_sum(const std::vector<cplx>& c, double h, const std::vector<cplx>& z, std::vector<cplx>& out);
void exp_sum_adjoint(const std::vector<cplx>& g, const std::vector<cplx>& z, double h, std::size_t n,
                     std::vector<cplx>& out);
}  // namespace parallel

// Points per block in exp_sum_adjoint. Partial sums are formed per block and
// added in block order, which keeps the result independent of thread count.
inline constexpr std::size_t kAdjointBlock = 512;

}  // namespace qps::kernels
