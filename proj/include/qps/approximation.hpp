#pragma once

#include <vector>

#include "qps/operators.hpp"
#include "qps/symbols.hpp"

namespace qps {

struct SeriesPlan {
  double beta = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double p = 1.0;
  std::size_t M = 0;
  std::vector<double> coefficients;  // c_n, n = 0..M
  double tail = 0.0;                 // bound on the norm of the remainder after order M
};

// Gamma(n+2+alpha) / (n! Gamma(alpha+2))
double series_coefficient(std::size_t n, double alpha);

// sum_{n>M} c_n delta^n; closed form for alpha = 0, summation otherwise.
double tail_bound(std::size_t M, double delta, double alpha);
double tail_bound_summed(std::size_t M, double delta, double alpha);

inline constexpr std::size_t kMaxSeriesOrder = 10000;

// The series is built for psi~(z) = psi(z/p); the dilation V_p is applied
// after it (see assemble_series).
SeriesPlan plan_series(const ExpPolySymbol& psi, double p, double alpha, double eps_target, double margin = 0.0);
SeriesPlan plan_with_order(const ExpPolySymbol& psi, double p, double alpha, std::size_t M);

// V_p * sum_{n=0}^{M} c_n T_tau^n D_{phi_n}, tau = psi(z/p) - i beta. This
// represents f -> f(p z + psi(z)).
FourierOperator assemble_series(const SeriesPlan& plan, const ExpPolySymbol& psi, GridPtr grid);
// Same sum restricted to n_lo <= n <= n_hi (coefficients are recomputed, so
// n_hi may exceed plan.M).
FourierOperator assemble_series_range(const SeriesPlan& plan, const ExpPolySymbol& psi, GridPtr grid, std::size_t n_lo,
                                      std::size_t n_hi);

// Weighted operator-norm distance between the orders M and M + extra.
double series_residual(const SeriesPlan& plan, const ExpPolySymbol& psi, GridPtr grid, std::size_t M,
                       std::size_t extra = 15);

// Grid matched to the plan's symbol: spacing divides every shift gamma/(2 pi p).
GridPtr grid_for_plan(const SeriesPlan& plan, const ExpPolySymbol& psi, std::size_t n, double t_max,
                      double seed_dt = 0.0);
// -ln(1e-12) / (2 pi beta)
double auto_t_max(double beta);

}  // namespace qps
