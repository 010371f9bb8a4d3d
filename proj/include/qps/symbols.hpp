#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qps/numerics.hpp"

namespace qps {

// Raised when a symbol violates Im psi >= eps > 0 or the enclosure is not
// compact in the upper half-plane.
struct InfeasibleSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExpTerm {
  cplx c;
  double gamma;
};

// psi(z) = c0 + sum_k c_k exp(i gamma_k z)
struct ExpPolySymbol {
  cplx c0;
  std::vector<ExpTerm> terms;

  cplx operator()(cplx z) const;
  // psi(z/p)
  ExpPolySymbol rescaled(double p) const;
  std::vector<double> frequencies() const;
};

cplx eval(const ExpPolySymbol& psi, cplx z);
double im_lower_bound(const ExpPolySymbol& psi);

struct Enclosure {
  cplx center;
  double radius;
};

Enclosure image_enclosure(const ExpPolySymbol& psi);

struct BetaChoice {
  double beta;
  double delta;            // minimized value of (|i beta - c| + r) / beta
  double delta_certified;  // delta + margin (1 - delta)
};

double beta_objective(const Enclosure& k, double beta);
// Lower end of the ray where the objective is below 1.
double beta_feasible_min(const Enclosure& k);
BetaChoice select_beta(const Enclosure& k, double margin = 0.0);

// Boundary data psi*(x) on a sample set that stays dense in every window |x| > n.
struct SampledBoundarySymbol {
  std::vector<double> x;
  std::vector<cplx> values;
  double X = 0.0;
};

// Dyadic blocks [0,1], [1,2], [2,4], ..., [2^k, X] on both half-lines with
// `per_block` equispaced (midpoint) samples in each block.
SampledBoundarySymbol sample_boundary(const std::function<cplx(double)>& f, double X, std::size_t per_block);

struct RangeCloud {
  std::vector<cplx> points;
  double epsilon = 0.0;
  double n_max = 0.0;
};

RangeCloud essential_range_sampled(const SampledBoundarySymbol& s, double eps, std::vector<double> n_schedule);

// Rational dependence of b/a: returns (p, q) with |b/a - p/q| <= tol |b/a| and
// q <= cap, found through continued-fraction convergents.
std::optional<std::pair<long long, long long>> rational_ratio(double a, double b, long long cap = 1000000,
                                                              double tol = 1e-9);

RangeCloud essential_range_exppoly(const ExpPolySymbol& psi, double resolution);

// Boundary samples on the circle near 1, eta*(exp(i theta)).
struct ArcSamples {
  std::vector<double> theta;
  std::vector<cplx> values;
};

// The arc positions that inverse Cayley sends to the sample_boundary abscissae.
ArcSamples sample_arc(const std::function<cplx(cplx)>& eta, double X, std::size_t per_block);
// x = inverse_cayley(exp(i theta)) = -cot(theta/2)
double arc_to_line(double theta);
double line_to_arc(double x);

RangeCloud pullback_range_disk(const ArcSamples& s, double eps, std::vector<double> n_schedule);

}  // namespace qps
