#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qps/numerics.hpp"

namespace qps {

struct SpaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Discretization of L^2_{alpha+1}(R+): uniform nodes t_j = j*dt, j = 1..N,
// trapezoid weights on (0, T_max] (the t = 0 node is dropped).
struct HalfPlaneGrid {
  double alpha = 0.0;
  std::vector<double> t;
  std::vector<double> w;
  double t_max = 0.0;
  double dt = 0.0;

  static std::shared_ptr<const HalfPlaneGrid> uniform(double alpha, std::size_t n, double t_max);

  std::size_t size() const { return t.size(); }
  // Gamma(alpha+1)/(4 pi)^(alpha+1), the constant that makes the transform isometric.
  double norm_constant() const;
  // Weights of the inner product <f,g> = sum_j ip_j f_j conj(g_j).
  std::vector<double> ip_weights() const;
  void validate() const;
};

using GridPtr = std::shared_ptr<const HalfPlaneGrid>;

struct GridFunction {
  GridPtr grid;
  std::vector<cplx> values;

  GridFunction() = default;
  GridFunction(GridPtr g, std::vector<cplx> v);
  static GridFunction sample(GridPtr g, const std::function<cplx(double)>& f);
  static GridFunction zero(GridPtr g);
};

double fourier_norm(const GridFunction& f);
cplx fourier_inner(const GridFunction& f, const GridFunction& g);
// Relative distance ||f - g|| / ||g|| in the grid norm.
double relative_error(const GridFunction& f, const GridFunction& g);

// F(z) = int_0^inf f(t) exp(2 pi i t z) dt by the grid rule.
cplx pw_inverse(const GridFunction& f, cplx z);
std::vector<cplx> pw_inverse(const GridFunction& f, const std::vector<cplx>& z);

// Pullback of the disk rule through the inverse Cayley map; weights carry
// the Jacobian and y^alpha, so sum W_k |F(z_k)|^2 approximates ||F||^2.
QuadratureRule halfplane_quadrature(double alpha, std::size_t n_r, std::size_t n_theta);

struct StripOptions {
  std::size_t x_nodes = 0;  // 0: twice the grid size
  double dv = 0.25;         // step in v = log y
  double tol = 1e-9;        // truncation target for the y range
};

// Rule on the strip [-P/2, P/2) x (0, inf), P = 1/dt: trapezoid in x, trapezoid in
// log y. Functions built from the grid are P-periodic in x, so one period is
// the whole domain for them.
QuadratureRule strip_quadrature(const HalfPlaneGrid& grid, const StripOptions& opt = {});

double a2_norm(const std::vector<cplx>& samples, const QuadratureRule& rule);

struct ForwardResult {
  GridFunction f;
  // Relative mismatch |g(x0 + P) - g(x0)| on the strip edges; large values mean
  // g is not periodic at the grid scale and the strip truncates it.
  double edge_mismatch = 0.0;
  bool truncation_warning = false;
};

// F(g)(t) = (4 pi)^(alpha+1) t^(alpha+1) / Gamma(alpha+1) * int e^{-2 pi i t conj(z)} g(z) dA_alpha
GridFunction pw_forward(const std::vector<cplx>& g_samples, const QuadratureRule& rule, GridPtr grid);
ForwardResult pw_forward(const std::function<cplx(cplx)>& g, GridPtr grid, const StripOptions& opt = {});

cplx cayley(cplx z);
cplx inverse_cayley(cplx w);

// Phi(f)(z) = 2^(alpha+1) / (z+i)^(alpha+2) f((z-i)/(z+i)).
cplx phi_map(const Poly& f, double alpha, cplx z);
cplx phi_map(const std::function<cplx(cplx)>& f, double alpha, cplx z);

// k_w(z) = 1 / (conj(w) - z)^(alpha+2).
cplx kernel_eval(cplx w, cplx z, double alpha);

// int f(w) dA_alpha(w) / (conj(w) - z0)^(alpha+2) over the rule.
cplx kernel_integral(const std::function<cplx(cplx)>& f, cplx z0, double alpha, const QuadratureRule& rule);

struct Calibration {
  cplx c;          // constant from the pair f = (z+i)^-(alpha+2), z0 = 2i
  double spread;   // max relative disagreement of the three test pairs
};

// Solves f(z0) = c * kernel_integral(f, z0) for c on three analytic test pairs.
Calibration calibrate_reproducing_constant(double alpha, const QuadratureRule& rule);
Calibration calibrate_reproducing_constant(double alpha);

cplx reproduce(const std::function<cplx(cplx)>& f, cplx z0, double alpha, const QuadratureRule& rule, cplx c);
cplx reproduce(const std::function<cplx(cplx)>& f, cplx z0, double alpha);

// Gamma(s) / (-2 pi i (z + i b))^s: transform of t^(s-1) e^{-2 pi b t}.
cplx laplace_power(double s, double b, cplx z);

}  // namespace qps
