#include "qps/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qps/kernels.hpp"

namespace qps {

namespace {

void same_grid(const FourierOperator& a, const FourierOperator& b) {
  if (a.size() != b.size()) throw std::invalid_argument("operator: dimension mismatch");
}

cplx ipow(std::size_t n) {
  static const cplx p[4] = {1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
  return p[n % 4];
}

}  // namespace

GridFunction FourierOperator::operator()(const GridFunction& f) const {
  if (f.values.size() != size()) throw std::invalid_argument("operator: dimension mismatch");
  return GridFunction(grid, apply(matrix, f.values));
}

FourierOperator operator*(const FourierOperator& a, const FourierOperator& b) {
  same_grid(a, b);
  return {a.grid, a.matrix * b.matrix, a.approximate || b.approximate};
}

FourierOperator operator+(const FourierOperator& a, const FourierOperator& b) {
  same_grid(a, b);
  return {a.grid, a.matrix + b.matrix, a.approximate || b.approximate};
}

FourierOperator operator-(const FourierOperator& a, const FourierOperator& b) {
  same_grid(a, b);
  return {a.grid, a.matrix - b.matrix, a.approximate || b.approximate};
}

double onb_norm(std::size_t n, double alpha) {
  if (!(alpha > -1.0)) throw std::invalid_argument("onb_norm: alpha must exceed -1");
  const double nn = static_cast<double>(n);
  return std::sqrt(kPi * std::exp(std::lgamma(nn + 1.0) + std::lgamma(alpha + 1.0) - std::lgamma(nn + alpha + 2.0)));
}

FourierOperator multiplier_op(const Multiplier& theta, GridPtr grid) {
  std::vector<cplx> d(grid->size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = theta(grid->t[j]);
  return {grid, ComplexMatrix::diagonal(d)};
}

Multiplier phi_n_symbol(std::size_t n, double beta, double alpha) {
  if (!(beta > 0.0)) throw std::invalid_argument("phi_n_symbol: beta must be positive");
  const double nn = static_cast<double>(n);
  const double log_poch = std::lgamma(alpha + 2.0 + nn) - std::lgamma(alpha + 2.0);
  const cplx phase = ipow(n);
  return [=](double t) -> cplx {
    if (t < 0.0) return 0.0;
    if (t == 0.0) return n == 0 ? cplx(1.0) : cplx(0.0);
    // log space keeps large n finite
    const double lm = nn * std::log(2.0 * kPi * t) - 2.0 * kPi * beta * t - log_poch;
    return phase * std::exp(lm);
  };
}

FourierOperator shift_op(double t0, GridPtr grid) {
  if (t0 < 0.0) throw std::invalid_argument("shift_op: negative shift");
  const double k = t0 / grid->dt;
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 * std::max(1.0, k))
    throw IncommensurableGrid("shift_op: shift is not a multiple of the grid spacing", "");
  const auto ks = static_cast<std::size_t>(kr);
  const std::size_t n = grid->size();
  ComplexMatrix m(n, n);
  for (std::size_t i = ks; i < n; ++i) m(i, i - ks) = 1.0;
  return {grid, std::move(m)};
}

FourierOperator toeplitz_exppoly(cplx tau_c0, const std::vector<ExpTerm>& terms, GridPtr grid) {
  FourierOperator t{grid, ComplexMatrix::identity(grid->size())};
  t.matrix *= tau_c0;
  for (const auto& term : terms) {
    FourierOperator s = shift_op(term.gamma / (2.0 * kPi), grid);
    s.matrix *= term.c;
    t.matrix += s.matrix;
  }
  return t;
}

FourierOperator dilation_op(double p, GridPtr grid) {
  if (!(p > 0.0)) throw std::invalid_argument("dilation_op: p must be positive");
  const std::size_t n = grid->size();
  if (p == 1.0) return {grid, ComplexMatrix::identity(n)};
  ComplexMatrix m(n, n);
  // positions: node j sits at index j+1 in units of dt; index 0 is t = 0 where
  // the data vanish.
  const auto last = static_cast<long>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = grid->t[i] / p / grid->dt;
    if (u > static_cast<double>(last) + 1e-12) continue;
    long j0 = static_cast<long>(std::floor(u)) - 1;
    j0 = std::clamp(j0, 0L, std::max(0L, last - 3));
    for (long a = 0; a < 4; ++a) {
      const long ja = j0 + a;
      if (ja < 1 || ja > last) continue;
      double l = 1.0;
      for (long b = 0; b < 4; ++b)
        if (b != a) l *= (u - static_cast<double>(j0 + b)) / static_cast<double>(a - b);
      m(i, static_cast<std::size_t>(ja - 1)) += l / p;
    }
  }
  return {grid, std::move(m), true};
}

FourierOperator weighted_adjoint(const FourierOperator& a) {
  const auto w = a.grid->ip_weights();
  const std::size_t n = a.size();
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a.matrix(j, i)) * (w[j] / w[i]);
  return {a.grid, std::move(r), a.approximate};
}

double weighted_norm(const FourierOperator& a) { return operator_norm(a.matrix, a.grid->ip_weights()); }

DiskOperator composition_disk(const Poly& phi, double alpha, std::size_t n) {
  if (n > 512) throw std::invalid_argument("composition_disk: degree above 512");
  const std::size_t probes = 4 * std::max<std::size_t>(phi.degree(), 16) + 64;
  double bmax = 0.0;
  for (std::size_t k = 0; k < probes; ++k)
    bmax = std::max(bmax, std::abs(phi(std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / probes))));
  if (bmax > 1.0 + 1e-9) throw std::invalid_argument("composition_disk: symbol is not a self-map of the disk");
  DiskOperator d{alpha, n, ComplexMatrix(n + 1, n + 1)};
  std::vector<double> nrm(n + 1);
  for (std::size_t k = 0; k <= n; ++k) nrm[k] = onb_norm(k, alpha);
  Poly power({1.0}, n);
  for (std::size_t col = 0; col <= n; ++col) {
    for (std::size_t m = 0; m <= n; ++m) d.matrix(m, col) = power.coeff(m) * nrm[m] / nrm[col];
    if (col < n) power = poly_mul(power, phi, n);
  }
  return d;
}

DiskOperator toeplitz_disk(const HarmonicPoly& f, double alpha, std::size_t n) {
  DiskOperator d{alpha, n, ComplexMatrix(n + 1, n + 1)};
  std::vector<double> nrm(n + 1);
  for (std::size_t k = 0; k <= n; ++k) nrm[k] = onb_norm(k, alpha);
  for (std::size_t col = 0; col <= n; ++col) {
    for (std::size_t j = 0; j < f.a.size() && col + j <= n; ++j)
      d.matrix(col + j, col) += f.a[j] * nrm[col + j] / nrm[col];
    for (std::size_t j = 1; j < f.b.size() && j <= col; ++j)
      d.matrix(col - j, col) += f.b[j] * nrm[col] / nrm[col - j];
  }
  return d;
}

GridPtr grid_for_frequencies(double alpha, const std::vector<double>& gammas, std::size_t n, double t_max,
                             double seed_dt) {
  if (!(t_max > 0.0)) throw std::invalid_argument("grid: t_max must be positive");
  if (gammas.empty()) {
    if (seed_dt > 0.0) n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(t_max / seed_dt - 1e-9)));
    return HalfPlaneGrid::uniform(alpha, n, seed_dt > 0.0 ? seed_dt * static_cast<double>(n) : t_max);
  }
  std::vector<double> shifts;
  for (double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("grid: frequencies must be positive");
    shifts.push_back(g / (2.0 * kPi));
  }
  long long L = 1;
  for (double s : shifts) {
    auto pq = rational_ratio(shifts[0], s);
    if (!pq) {
      std::ostringstream hint;
      if (auto coarse = rational_ratio(shifts[0], s, 1000, 1e-3))
        hint << "replace gamma = " << s * 2.0 * kPi << " by " << gammas[0] << " * " << coarse->first << "/"
             << coarse->second;
      throw IncommensurableGrid("grid: frequencies are not rationally related", hint.str());
    }
    L = std::lcm(L, pq->second);
  }
  const double unit = shifts[0] / static_cast<double>(L);
  const double target = seed_dt > 0.0 ? seed_dt : t_max / static_cast<double>(n);
  const double m = std::max(1.0, std::ceil(unit / target - 1e-9));
  const double dt = unit / m;
  if (dt < 0.5 * target) {
    std::ostringstream msg;
    msg << "grid: frequencies need spacing " << dt << ", finer than requested " << target;
    std::ostringstream hint;
    hint << "use frequencies with a coarser common divisor, e.g. multiples of " << 2.0 * kPi * target;
    throw IncommensurableGrid(msg.str(), hint.str());
  }
  if (seed_dt > 0.0) n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9)));
  return HalfPlaneGrid::uniform(alpha, n, dt * static_cast<double>(n));
}

}  // namespace qps
