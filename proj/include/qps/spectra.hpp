#pragma once

#include <functional>
#include <vector>

#include "qps/operators.hpp"
#include "qps/symbols.hpp"

namespace qps {

// Points use lambda(z, t) = exp(2 pi i z t).
struct SpectrumSet {
  RangeCloud source_range;
  double t_max = 0.0;
  std::size_t t_count = 0;
  std::vector<cplx> points;  // every curve sample, then 0
  struct Curve {
    cplx z;
    std::vector<cplx> values;
  };
  std::vector<Curve> parametric;
};

// Requires 2 pi t_max min Im z >= 30 so each curve ends within ~1e-13 of 0.
SpectrumSet essential_spectrum_formula(const RangeCloud& range, double t_max, std::size_t t_count);
// Largest distance between consecutive curve samples.
double image_resolution(const SpectrumSet& s);

std::vector<cplx> finite_section_eigs(const FourierOperator& op);
std::vector<cplx> finite_section_eigs(const DiskOperator& op);

// Gaussian probe exp(-(t - t0)^2 / (2 width^2)); support t0 +- 5 width.
GridFunction gaussian_bump(GridPtr grid, double t0, double width);
double residual_check(const FourierOperator& op, cplx z, double t0, double width);

struct NormalityProfile {
  std::vector<double> column_norms;
  double head_max = 0.0;
  double tail_max = 0.0;
  double ratio = 0.0;  // head_max / tail_max, 0 when head_max is 0
};

NormalityProfile essential_normality_diag(const FourierOperator& op);
// Same with explicit inner-product weights (flat weights for the shift control).
NormalityProfile essential_normality_diag(const ComplexMatrix& a, const std::vector<double>& weights);

struct MOProfile {
  std::vector<double> r_levels;
  std::vector<double> values;
  static double box_area(double r) { return (1.0 + r) * (1.0 - r) * (1.0 - r); }
};

inline constexpr std::size_t kBoxNodes1D = 16;  // 16 x 16 polar sub-rule per box

MOProfile vmo_profile(const std::function<cplx(cplx)>& f, const std::vector<double>& r_levels,
                      std::size_t theta_count);

// Same boxes, but the base angles cluster at theta0: theta0 +- s with s
// log-spaced in [1 - r, 1], theta_count angles in all. Symbols pulled back
// from the half-plane oscillate at angles ~ sqrt(1 - r) from w = 1, which an
// equispaced sweep misses.
MOProfile vmo_profile_focused(const std::function<cplx(cplx)>& f, const std::vector<double>& r_levels,
                              std::size_t theta_count, double theta0);

double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);
double directed_distance(const std::vector<cplx>& from, const std::vector<cplx>& to);

}  // namespace qps
