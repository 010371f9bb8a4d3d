#include "qps/approximation.hpp"

#include <cmath>
#include <limits>

namespace qps {

double series_coefficient(std::size_t n, double alpha) {
  if (!(alpha > -1.0)) throw std::invalid_argument("series_coefficient: alpha must exceed -1");
  const double nn = static_cast<double>(n);
  return std::exp(std::lgamma(nn + 2.0 + alpha) - std::lgamma(nn + 1.0) - std::lgamma(alpha + 2.0));
}

double tail_bound_summed(std::size_t M, double delta, double alpha) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("tail_bound: delta must lie in [0, 1)");
  if (delta == 0.0) return 0.0;
  const double m1 = static_cast<double>(M + 1);
  double term = std::exp(std::lgamma(m1 + 2.0 + alpha) - std::lgamma(m1 + 1.0) - std::lgamma(alpha + 2.0) +
                         m1 * std::log(delta));
  double sum = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t n = M + 1; n < M + 1 + 1000000; ++n) {
    sum += term;
    const double nn = static_cast<double>(n);
    const double ratio = delta * (nn + 2.0 + alpha) / (nn + 1.0);
    term *= ratio;
    // stop once the terms decrease and the geometric remainder is negligible
    if (ratio < 1.0 && term / (1.0 - ratio) <= 1e-3 * eps * sum) break;
    if (term == 0.0) break;
  }
  return sum;
}

double tail_bound(std::size_t M, double delta, double alpha) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("tail_bound: delta must lie in [0, 1)");
  if (delta == 0.0) return 0.0;
  if (alpha == 0.0) {
    const double m1 = static_cast<double>(M + 1);
    const double om = 1.0 - delta;
    return std::pow(delta, m1) * (m1 * om + 1.0) / (om * om);
  }
  return tail_bound_summed(M, delta, alpha);
}

namespace {

SeriesPlan base_plan(const ExpPolySymbol& psi, double p, double alpha, double margin) {
  if (!(p > 0.0)) throw std::invalid_argument("plan_series: p must be positive");
  if (!(alpha > -1.0)) throw std::invalid_argument("plan_series: alpha must exceed -1");
  const ExpPolySymbol scaled = psi.rescaled(p);
  const BetaChoice bc = select_beta(image_enclosure(scaled), margin);
  SeriesPlan plan;
  plan.beta = bc.beta;
  plan.delta = bc.delta_certified;
  plan.alpha = alpha;
  plan.p = p;
  return plan;
}

void fill_order(SeriesPlan& plan, std::size_t M) {
  plan.M = M;
  plan.coefficients.resize(M + 1);
  for (std::size_t n = 0; n <= M; ++n) plan.coefficients[n] = series_coefficient(n, plan.alpha);
  plan.tail = tail_bound(M, plan.delta, plan.alpha);
}

}  // namespace

SeriesPlan plan_series(const ExpPolySymbol& psi, double p, double alpha, double eps_target, double margin) {
  if (!(eps_target > 0.0)) throw std::invalid_argument("plan_series: eps_target must be positive");
  SeriesPlan plan = base_plan(psi, p, alpha, margin);
  if (plan.delta == 0.0) {
    fill_order(plan, 0);
    return plan;
  }
  std::size_t M = 0;
  while (tail_bound(M, plan.delta, alpha) > eps_target) {
    if (++M > kMaxSeriesOrder) throw std::runtime_error("plan_series: truncation order cap exceeded (delta too close to 1)");
  }
  fill_order(plan, M);
  return plan;
}

SeriesPlan plan_with_order(const ExpPolySymbol& psi, double p, double alpha, std::size_t M) {
  SeriesPlan plan = base_plan(psi, p, alpha, 0.0);
  fill_order(plan, plan.delta == 0.0 ? 0 : M);
  return plan;
}

FourierOperator assemble_series_range(const SeriesPlan& plan, const ExpPolySymbol& psi, GridPtr grid, std::size_t n_lo,
                                      std::size_t n_hi) {
  const std::size_t N = grid->size();
  FourierOperator sum{grid, ComplexMatrix(N, N)};
  const ExpPolySymbol scaled = psi.rescaled(plan.p);
  if (plan.delta == 0.0) {
    // tau vanishes: only the n = 0 term survives
    if (n_lo == 0) sum = multiplier_op(phi_n_symbol(0, plan.beta, plan.alpha), grid);
  } else {
    const FourierOperator tau =
        toeplitz_exppoly(scaled.c0 - cplx(0.0, plan.beta), scaled.terms, grid);
    ComplexMatrix power = ComplexMatrix::identity(N);
    std::vector<cplx> diag(N);
    for (std::size_t n = 0; n <= n_hi; ++n) {
      if (n >= n_lo) {
        const double c = series_coefficient(n, plan.alpha);
        const Multiplier phi = phi_n_symbol(n, plan.beta, plan.alpha);
        for (std::size_t j = 0; j < N; ++j) diag[j] = c * phi(grid->t[j]);
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) {
            const cplx pij = power(i, j);
            if (pij != cplx(0.0)) sum.matrix(i, j) += pij * diag[j];
          }
      }
      if (n < n_hi) power = tau.matrix * power;
    }
  }
  if (plan.p != 1.0) {
    const FourierOperator vp = dilation_op(plan.p, grid);
    sum = vp * sum;
  }
  return sum;
}

FourierOperator assemble_series(const SeriesPlan& plan, const ExpPolySymbol& psi, GridPtr grid) {
  return assemble_series_range(plan, psi, grid, 0, plan.M);
}

double series_residual(const SeriesPlan& plan, const ExpPolySymbol& psi, GridPtr grid, std::size_t M,
                       std::size_t extra) {
  if (plan.delta == 0.0) return 0.0;
  return weighted_norm(assemble_series_range(plan, psi, grid, M + 1, M + extra));
}

GridPtr grid_for_plan(const SeriesPlan& plan, const ExpPolySymbol& psi, std::size_t n, double t_max, double seed_dt) {
  return grid_for_frequencies(plan.alpha, psi.rescaled(plan.p).frequencies(), n, t_max, seed_dt);
}

double auto_t_max(double beta) { return -std::log(1e-12) / (2.0 * kPi * beta); }

}  // namespace qps
