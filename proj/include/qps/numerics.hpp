#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qps {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  const std::vector<cplx>& entries() const { return a_; }

  bool all_finite() const;
  ComplexMatrix adjoint() const;
  double max_abs() const;
  // Largest |a_ij| off the main diagonal.
  double max_abs_offdiag() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
// Matrix product; uses the parallel kernel.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> apply(const ComplexMatrix& a, const std::vector<cplx>& x);

enum class Domain { interval, disk_weighted, halfplane_truncated, halfplane_strip };

struct QuadratureRule {
  std::vector<cplx> nodes;
  std::vector<double> weights;
  Domain domain = Domain::interval;
  double alpha = 0.0;

  std::size_t size() const { return nodes.size(); }
  double mass() const;
};

// Truncated power series / polynomial, coefficient index = degree.
struct Poly {
  std::vector<cplx> c;
  std::size_t max_degree = 0;

  Poly() = default;
  Poly(std::vector<cplx> coeffs, std::size_t max_deg);
  explicit Poly(std::vector<cplx> coeffs);

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  cplx coeff(std::size_t k) const { return k < c.size() ? c[k] : cplx(0.0); }
  cplx operator()(cplx z) const;
};

// Product truncated to degree n.
Poly poly_mul(const Poly& p, const Poly& q, std::size_t n);
// Coefficients of p(q(z)) truncated to degree n.
Poly poly_compose(const Poly& p, const Poly& q, std::size_t n);

// All eigenvalues of a square matrix (Hessenberg reduction + shifted QR).
std::vector<cplx> eigenvalues(const ComplexMatrix& m);

// Largest singular value in the inner product <x,y> = sum w_j x_j conj(y_j).
double operator_norm(const ComplexMatrix& m, const std::vector<double>& ip_weights);

// Largest eigenvalue of a Hermitian matrix (Householder tridiagonalization + bisection).
double hermitian_max_eigenvalue(const ComplexMatrix& h);

// Eigen-decomposition of a real symmetric tridiagonal matrix (implicit QL).
// On return d holds eigenvalues in ascending order and first[k] is the first
// component of the k-th normalized eigenvector (what Golub-Welsch needs).
void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>& first);

QuadratureRule gauss_legendre(std::size_t n, double a, double b);
// Nodes/weights for weight (1-x)^a (1+x)^b on [-1,1].
QuadratureRule gauss_jacobi(std::size_t n, double a, double b);
// Tensor rule for dA_alpha = (1-|z|^2)^alpha dA on the unit disk.
QuadratureRule disk_quadrature(double alpha, std::size_t n_r, std::size_t n_theta);

// Principal-branch power w^p.
cplx cpow_principal(cplx w, double p);

}  // namespace qps
