#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qps/numerics.hpp"
#include "qps/spaces.hpp"
#include "qps/symbols.hpp"

namespace qps {

// Raised when a frequency set cannot be represented by exact shifts on a
// uniform grid of the requested resolution.
struct IncommensurableGrid : std::runtime_error {
  std::string suggestion;
  IncommensurableGrid(const std::string& what, std::string hint)
      : std::runtime_error(what), suggestion(std::move(hint)) {}
};

struct FourierOperator {
  GridPtr grid;
  ComplexMatrix matrix;
  bool approximate = false;  // set when the matrix comes from interpolation

  std::size_t size() const { return matrix.rows(); }
  GridFunction operator()(const GridFunction& f) const;
};

FourierOperator operator*(const FourierOperator& a, const FourierOperator& b);
FourierOperator operator+(const FourierOperator& a, const FourierOperator& b);
FourierOperator operator-(const FourierOperator& a, const FourierOperator& b);

struct DiskOperator {
  double alpha = 0.0;
  std::size_t degree = 0;
  ComplexMatrix matrix;
};

// ||z^n|| in A^2_alpha(D).
double onb_norm(std::size_t n, double alpha);

using Multiplier = std::function<cplx(double)>;

FourierOperator multiplier_op(const Multiplier& theta, GridPtr grid);
// (2 pi i t)^n exp(-2 pi beta t) / ((alpha+2)(alpha+3)...(alpha+n+1))
Multiplier phi_n_symbol(std::size_t n, double beta, double alpha);
FourierOperator shift_op(double t0, GridPtr grid);
FourierOperator toeplitz_exppoly(cplx tau_c0, const std::vector<ExpTerm>& terms, GridPtr grid);
// (V_p f)^(s) = f^(s/p) / p, four-point Lagrange interpolation in t.
FourierOperator dilation_op(double p, GridPtr grid);
FourierOperator weighted_adjoint(const FourierOperator& a);
// Operator norm in the grid inner product.
double weighted_norm(const FourierOperator& a);

DiskOperator composition_disk(const Poly& phi, double alpha, std::size_t n);

// f = sum_j a_j z^j + sum_{j>=1} b_j conj(z)^j  (b_0 is ignored; put constants in a_0)
struct HarmonicPoly {
  std::vector<cplx> a;
  std::vector<cplx> b;
};

DiskOperator toeplitz_disk(const HarmonicPoly& f, double alpha, std::size_t n);

// Uniform grid with n nodes and spacing dividing every gamma_k / (2 pi). The
// spacing is the largest divisor not above t_max / n (or seed_dt when given,
// in which case the node count follows from t_max).
GridPtr grid_for_frequencies(double alpha, const std::vector<double>& gammas, std::size_t n, double t_max,
                             double seed_dt = 0.0);

}  // namespace qps
