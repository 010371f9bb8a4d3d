#include "qps/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "qps/kernels.hpp"

namespace qps {

namespace {
const cplx I(0.0, 1.0);

double lgamma_checked(double x) { return std::lgamma(x); }
}  // namespace

// ---------------------------------------------------------------- grid

std::shared_ptr<const HalfPlaneGrid> HalfPlaneGrid::uniform(double alpha, std::size_t n, double t_max) {
  if (!(alpha > -1.0)) throw SpaceError("grid: alpha must exceed -1");
  if (n < 2) throw SpaceError("grid: need at least two nodes");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw SpaceError("grid: t_max must be positive");
  auto g = std::make_shared<HalfPlaneGrid>();
  g->alpha = alpha;
  g->t_max = t_max;
  g->dt = t_max / static_cast<double>(n);
  g->t.resize(n);
  g->w.assign(n, g->dt);
  for (std::size_t j = 0; j < n; ++j) g->t[j] = g->dt * static_cast<double>(j + 1);
  g->t[n - 1] = t_max;
  g->w[n - 1] = 0.5 * g->dt;
  return g;
}

double HalfPlaneGrid::norm_constant() const {
  return std::exp(lgamma_checked(alpha + 1.0) - (alpha + 1.0) * std::log(4.0 * kPi));
}

std::vector<double> HalfPlaneGrid::ip_weights() const {
  const double c = norm_constant();
  std::vector<double> ip(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) ip[j] = c * w[j] * std::pow(t[j], -(alpha + 1.0));
  return ip;
}

void HalfPlaneGrid::validate() const {
  if (t.empty() || t.size() != w.size()) throw SpaceError("grid: node/weight size mismatch");
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!(t[j] > 0.0) || t[j] > t_max * (1.0 + 1e-12)) throw SpaceError("grid: node outside (0, T_max]");
    if (j > 0 && !(t[j] > t[j - 1])) throw SpaceError("grid: nodes not increasing");
    if (!(w[j] > 0.0)) throw SpaceError("grid: non-positive weight");
  }
}

GridFunction::GridFunction(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw SpaceError("GridFunction: null grid");
  if (values.size() != grid->size()) throw SpaceError("GridFunction: value count differs from node count");
}

GridFunction GridFunction::sample(GridPtr g, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(g->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(g->t[j]);
  return GridFunction(std::move(g), std::move(v));
}

GridFunction GridFunction::zero(GridPtr g) {
  const std::size_t n = g->size();
  return GridFunction(std::move(g), std::vector<cplx>(n));
}

cplx fourier_inner(const GridFunction& f, const GridFunction& g) {
  if (f.grid != g.grid && f.values.size() != g.values.size())
    throw SpaceError("fourier_inner: functions live on different grids");
  const auto ip = f.grid->ip_weights();
  cplx s = 0.0;
  for (std::size_t j = 0; j < ip.size(); ++j) s += ip[j] * f.values[j] * std::conj(g.values[j]);
  return s;
}

double fourier_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, fourier_inner(f, f).real())); }

double relative_error(const GridFunction& f, const GridFunction& g) {
  std::vector<cplx> d(f.values.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = f.values[j] - g.values[j];
  const double ng = fourier_norm(g);
  const double nd = fourier_norm(GridFunction(f.grid, std::move(d)));
  return ng > 0.0 ? nd / ng : nd;
}

// ---------------------------------------------------------------- transforms

std::vector<cplx> pw_inverse(const GridFunction& f, const std::vector<cplx>& z) {
  for (const auto& p : z)
    if (!(p.imag() > 0.0)) throw SpaceError("pw_inverse: point not in the upper half-plane");
  std::vector<cplx> c(f.values.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = f.grid->w[j] * f.values[j];
  std::vector<cplx> out;
  kernels::parallel::exp_sum(c, f.grid->dt, z, out);
  return out;
}

cplx pw_inverse(const GridFunction& f, cplx z) { return pw_inverse(f, std::vector<cplx>{z})[0]; }

QuadratureRule halfplane_quadrature(double alpha, std::size_t n_r, std::size_t n_theta) {
  QuadratureRule d = disk_quadrature(alpha, n_r, n_theta);
  QuadratureRule h;
  h.domain = Domain::halfplane_truncated;
  h.alpha = alpha;
  h.nodes.resize(d.size());
  h.weights.resize(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const cplx w = d.nodes[k];
    h.nodes[k] = inverse_cayley(w);
    // dA(z) = 4|1-w|^-4 dA(w) and y^alpha = (1-|w|^2)^alpha |1-w|^(-2 alpha)
    h.weights[k] = d.weights[k] * 4.0 * std::pow(std::abs(1.0 - w), -(2.0 * alpha + 4.0));
  }
  return h;
}

QuadratureRule strip_quadrature(const HalfPlaneGrid& grid, const StripOptions& opt) {
  const double a1 = grid.alpha + 1.0;
  const double period = 1.0 / grid.dt;
  const std::size_t nx = opt.x_nodes > 0 ? opt.x_nodes : 2 * grid.size();
  if (nx < grid.size()) throw SpaceError("strip_quadrature: need at least one x node per grid node");
  // y range: exp(-4 pi t y) y^alpha has to be resolved for t in [dt, T_max].
  const double v_lo = std::log(opt.tol) / a1 - std::log(4.0 * kPi * grid.t_max);
  const double v_hi = std::log(-std::log(opt.tol) / (2.0 * kPi * grid.dt));
  const auto nv = static_cast<std::size_t>(std::ceil((v_hi - v_lo) / opt.dv)) + 1;
  QuadratureRule q;
  q.domain = Domain::halfplane_strip;
  q.alpha = grid.alpha;
  q.nodes.reserve(nx * nv);
  q.weights.reserve(nx * nv);
  const double dx = period / static_cast<double>(nx);
  for (std::size_t iv = 0; iv < nv; ++iv) {
    const double v = v_lo + opt.dv * static_cast<double>(iv);
    const double y = std::exp(v);
    const double wy = opt.dv * std::exp(a1 * v);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = -0.5 * period + dx * static_cast<double>(ix);
      q.nodes.emplace_back(x, y);
      q.weights.push_back(wy * dx);
    }
  }
  return q;
}

double a2_norm(const std::vector<cplx>& samples, const QuadratureRule& rule) {
  if (samples.size() != rule.size()) throw SpaceError("a2_norm: sample count differs from rule size");
  double s = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) s += rule.weights[k] * std::norm(samples[k]);
  return std::sqrt(s);
}

GridFunction pw_forward(const std::vector<cplx>& g_samples, const QuadratureRule& rule, GridPtr grid) {
  if (g_samples.size() != rule.size()) throw SpaceError("pw_forward: sample count differs from rule size");
  std::vector<cplx> wg(rule.size());
  for (std::size_t k = 0; k < wg.size(); ++k) wg[k] = rule.weights[k] * g_samples[k];
  std::vector<cplx> acc;
  kernels::parallel::exp_sum_adjoint(wg, rule.nodes, grid->dt, grid->size(), acc);
  const double a1 = grid->alpha + 1.0;
  const double c = std::exp(a1 * std::log(4.0 * kPi) - lgamma_checked(a1));
  std::vector<cplx> v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = c * std::pow(grid->t[j], a1) * acc[j];
  return GridFunction(std::move(grid), std::move(v));
}

ForwardResult pw_forward(const std::function<cplx(cplx)>& g, GridPtr grid, const StripOptions& opt) {
  const QuadratureRule rule = strip_quadrature(*grid, opt);
  std::vector<cplx> s(rule.size());
  double gmax = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k] = g(rule.nodes[k]);
    gmax = std::max(gmax, std::abs(s[k]));
  }
  ForwardResult r;
  r.f = pw_forward(s, rule, grid);
  const double period = 1.0 / grid->dt;
  double mismatch = 0.0;
  for (double y : {1e-2, 1e-1, 1.0, 10.0}) {
    const cplx z0(-0.5 * period, y);
    mismatch = std::max(mismatch, std::abs(g(z0 + period) - g(z0)));
  }
  r.edge_mismatch = gmax > 0.0 ? mismatch / gmax : 0.0;
  r.truncation_warning = r.edge_mismatch > 1e-6;
  return r;
}

// ---------------------------------------------------------------- Cayley, kernels

cplx cayley(cplx z) {
  if (z == -I) throw SpaceError("cayley: pole at z = -i");
  return (z - I) / (z + I);
}

cplx inverse_cayley(cplx w) {
  if (w == cplx(1.0)) throw SpaceError("inverse_cayley: pole at w = 1");
  return I * (1.0 + w) / (1.0 - w);
}

cplx phi_map(const std::function<cplx(cplx)>& f, double alpha, cplx z) {
  if (!(z.imag() > 0.0)) throw SpaceError("phi_map: point not in the upper half-plane");
  return std::pow(2.0, alpha + 1.0) / cpow_principal(z + I, alpha + 2.0) * f(cayley(z));
}

cplx phi_map(const Poly& f, double alpha, cplx z) {
  return phi_map([&f](cplx w) { return f(w); }, alpha, z);
}

cplx kernel_eval(cplx w, cplx z, double alpha) { return 1.0 / cpow_principal(std::conj(w) - z, alpha + 2.0); }

cplx kernel_integral(const std::function<cplx(cplx)>& f, cplx z0, double alpha, const QuadratureRule& rule) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k)
    s += rule.weights[k] * f(rule.nodes[k]) * kernel_eval(rule.nodes[k], z0, alpha);
  return s;
}

Calibration calibrate_reproducing_constant(double alpha, const QuadratureRule& rule) {
  struct Pair {
    std::function<cplx(cplx)> f;
    cplx z0;
  };
  const double a2 = alpha + 2.0;
  const std::vector<Pair> pairs = {
      {[a2](cplx z) { return 1.0 / cpow_principal(z + I, a2); }, 2.0 * I},
      {[a2](cplx z) { return 1.0 / cpow_principal(z + 2.0 * I, a2 + 1.0); }, cplx(0.5, 1.5)},
      {[a2](cplx z) { return 1.0 / (cpow_principal(z + I, a2) * (z + 3.0 * I)); }, cplx(-1.0, 0.8)},
  };
  std::vector<cplx> cs;
  for (const auto& p : pairs) cs.push_back(p.f(p.z0) / kernel_integral(p.f, p.z0, alpha, rule));
  double spread = 0.0;
  for (std::size_t k = 1; k < cs.size(); ++k) spread = std::max(spread, std::abs(cs[k] - cs[0]) / std::abs(cs[0]));
  return {cs[0], spread};
}

Calibration calibrate_reproducing_constant(double alpha) {
  return calibrate_reproducing_constant(alpha, halfplane_quadrature(alpha, 64, 64));
}

cplx reproduce(const std::function<cplx(cplx)>& f, cplx z0, double alpha, const QuadratureRule& rule, cplx c) {
  if (!(z0.imag() > 0.0)) throw SpaceError("reproduce: point not in the upper half-plane");
  return c * kernel_integral(f, z0, alpha, rule);
}

cplx reproduce(const std::function<cplx(cplx)>& f, cplx z0, double alpha) {
  const QuadratureRule rule = halfplane_quadrature(alpha, 64, 64);
  const Calibration cal = calibrate_reproducing_constant(alpha, rule);
  return reproduce(f, z0, alpha, rule, cal.c);
}

cplx laplace_power(double s, double b, cplx z) {
  return std::exp(lgamma_checked(s)) / cpow_principal(cplx(0.0, -2.0 * kPi) * (z + cplx(0.0, b)), s);
}

}  // namespace qps
