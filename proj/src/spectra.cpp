#include "qps/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qps/kernels.hpp"

namespace qps {

SpectrumSet essential_spectrum_formula(const RangeCloud& range, double t_max, std::size_t t_count) {
  if (range.points.empty()) throw std::invalid_argument("spectrum: empty range");
  if (t_count < 2) throw std::invalid_argument("spectrum: t_count must be at least 2");
  double im_min = std::numeric_limits<double>::infinity();
  for (cplx z : range.points) {
    if (!(z.imag() > 0.0)) throw InfeasibleSymbol("spectrum: range point with Im <= 0");
    im_min = std::min(im_min, z.imag());
  }
  if (2.0 * kPi * t_max * im_min < 30.0 - 1e-9)
    throw std::invalid_argument("spectrum: t_max too small, need 2 pi t_max min Im z >= 30");
  SpectrumSet s;
  s.source_range = range;
  s.t_max = t_max;
  s.t_count = t_count;
  s.parametric.resize(range.points.size());
  for (std::size_t k = 0; k < range.points.size(); ++k) {
    const cplx z = range.points[k];
    auto& c = s.parametric[k];
    c.z = z;
    c.values.resize(t_count);
    for (std::size_t j = 0; j < t_count; ++j) {
      const double t = t_max * static_cast<double>(j) / static_cast<double>(t_count - 1);
      c.values[j] = std::exp(cplx(0.0, 2.0 * kPi * t) * z);
    }
  }
  s.points.reserve(range.points.size() * t_count + 1);
  for (const auto& c : s.parametric) s.points.insert(s.points.end(), c.values.begin(), c.values.end());
  s.points.push_back(0.0);
  return s;
}

double image_resolution(const SpectrumSet& s) {
  double gap = 0.0;
  for (const auto& c : s.parametric)
    for (std::size_t j = 1; j < c.values.size(); ++j) gap = std::max(gap, std::abs(c.values[j] - c.values[j - 1]));
  return gap;
}

std::vector<cplx> finite_section_eigs(const FourierOperator& op) {
  const std::size_t n = op.size();
  if (n > 2048) throw std::invalid_argument("finite_section_eigs: dimension above 2048");
  const auto w = op.grid->ip_weights();
  ComplexMatrix s(n, n);
  // W^{1/2} A W^{-1/2} has the same spectrum and a better-conditioned eigenbasis
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = op.matrix(i, j) * std::sqrt(w[i] / w[j]);
  return eigenvalues(s);
}

std::vector<cplx> finite_section_eigs(const DiskOperator& op) {
  if (op.matrix.rows() > 2048) throw std::invalid_argument("finite_section_eigs: dimension above 2048");
  return eigenvalues(op.matrix);
}

GridFunction gaussian_bump(GridPtr grid, double t0, double width) {
  if (!(width >= 3.0 * grid->dt * (1.0 - 1e-12)))
    throw std::invalid_argument("residual_check: width must be at least 3 grid spacings");
  if (t0 - 5.0 * width < grid->t.front() - 1e-12 || t0 + 5.0 * width > grid->t.back() + 1e-12)
    throw std::invalid_argument("residual_check: bump support exceeds the grid");
  return GridFunction::sample(grid, [=](double t) -> cplx {
    const double u = (t - t0) / width;
    return std::exp(-0.5 * u * u);
  });
}

double residual_check(const FourierOperator& op, cplx z, double t0, double width) {
  const GridFunction u = gaussian_bump(op.grid, t0, width);
  const cplx lambda = std::exp(cplx(0.0, 2.0 * kPi * t0) * z);
  GridFunction r = op(u);
  for (std::size_t j = 0; j < r.values.size(); ++j) r.values[j] -= lambda * u.values[j];
  return fourier_norm(r) / fourier_norm(u);
}

NormalityProfile essential_normality_diag(const ComplexMatrix& a, const std::vector<double>& w) {
  const std::size_t n = a.rows();
  if (a.cols() != n || w.size() != n) throw std::invalid_argument("essential_normality_diag: dimension mismatch");
  ComplexMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj(i, j) = std::conj(a(j, i)) * (w[j] / w[i]);
  ComplexMatrix k = adj * a;
  k -= a * adj;
  NormalityProfile p;
  p.column_norms.resize(n);
#ifdef QPS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::norm(k(i, j));
    p.column_norms[j] = std::sqrt(s / w[j]);
  }
  const std::size_t third = std::max<std::size_t>(1, n / 3);
  for (std::size_t j = 0; j < third; ++j) p.head_max = std::max(p.head_max, p.column_norms[j]);
  for (std::size_t j = n - third; j < n; ++j) p.tail_max = std::max(p.tail_max, p.column_norms[j]);
  if (p.head_max == 0.0)
    p.ratio = 0.0;
  else
    p.ratio = p.tail_max == 0.0 ? std::numeric_limits<double>::infinity() : p.head_max / p.tail_max;
  return p;
}

NormalityProfile essential_normality_diag(const FourierOperator& op) {
  return essential_normality_diag(op.matrix, op.grid->ip_weights());
}

namespace {

// max over the base angles of the mean oscillation on Q_z, z = r e^{i theta}
double max_box_oscillation(const std::function<cplx(cplx)>& f, double r, const std::vector<double>& thetas) {
  const QuadratureRule unit = gauss_legendre(kBoxNodes1D, -1.0, 1.0);
  const double h = 1.0 - r;
  std::vector<double> osc(thetas.size(), 0.0);
#ifdef QPS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const double theta = thetas[k];
    std::vector<cplx> vals;
    std::vector<double> wts;
    vals.reserve(kBoxNodes1D * kBoxNodes1D);
    wts.reserve(kBoxNodes1D * kBoxNodes1D);
    double area = 0.0;
    cplx mean = 0.0;
    for (std::size_t a = 0; a < kBoxNodes1D; ++a) {
      const double rho = r + 0.5 * h * (unit.nodes[a].real() + 1.0);
      const double wr = 0.5 * h * unit.weights[a] * rho;
      for (std::size_t b = 0; b < kBoxNodes1D; ++b) {
        const double phi = theta + h * unit.nodes[b].real();
        const double wt = wr * h * unit.weights[b];
        const cplx v = f(std::polar(rho, phi));
        vals.push_back(v);
        wts.push_back(wt);
        area += wt;
        mean += wt * v;
      }
    }
    mean /= area;
    double o = 0.0;
    for (std::size_t q = 0; q < vals.size(); ++q) o += wts[q] * std::abs(vals[q] - mean);
    osc[k] = o / area;
  }
  return *std::max_element(osc.begin(), osc.end());
}

void check_levels(const std::vector<double>& r_levels, std::size_t theta_count) {
  if (theta_count == 0) throw std::invalid_argument("vmo_profile: theta_count must be positive");
  for (double r : r_levels)
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("vmo_profile: r levels must lie in (0,1)");
}

}  // namespace

MOProfile vmo_profile(const std::function<cplx(cplx)>& f, const std::vector<double>& r_levels,
                      std::size_t theta_count) {
  check_levels(r_levels, theta_count);
  std::vector<double> thetas(theta_count);
  for (std::size_t k = 0; k < theta_count; ++k)
    thetas[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(theta_count);
  MOProfile prof;
  prof.r_levels = r_levels;
  for (double r : r_levels) prof.values.push_back(max_box_oscillation(f, r, thetas));
  return prof;
}

MOProfile vmo_profile_focused(const std::function<cplx(cplx)>& f, const std::vector<double>& r_levels,
                              std::size_t theta_count, double theta0) {
  check_levels(r_levels, theta_count);
  MOProfile prof;
  prof.r_levels = r_levels;
  const std::size_t half = std::max<std::size_t>(1, theta_count / 2);
  for (double r : r_levels) {
    const double lo = std::log(1.0 - r);
    std::vector<double> thetas;
    for (std::size_t k = 0; k < half; ++k) {
      const double s = half == 1 ? 1.0 - r : std::exp(lo * (1.0 - static_cast<double>(k) / (half - 1)));
      thetas.push_back(theta0 + s);
      thetas.push_back(theta0 - s);
    }
    prof.values.push_back(max_box_oscillation(f, r, thetas));
  }
  return prof;
}

namespace {

// Static 2-d tree over the target set (median splits, alternating axes).
class PointTree {
 public:
  explicit PointTree(std::vector<cplx> p) : pts_(std::move(p)) { build(0, pts_.size(), 0); }

  double nearest2(cplx q) const {
    double best = std::numeric_limits<double>::infinity();
    search(0, pts_.size(), 0, q, best);
    return best;
  }

 private:
  static double coord(cplx v, int axis) { return axis == 0 ? v.real() : v.imag(); }

  void build(std::size_t lo, std::size_t hi, int axis) {
    if (hi - lo <= kLeaf) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(pts_.begin() + static_cast<long>(lo), pts_.begin() + static_cast<long>(mid),
                     pts_.begin() + static_cast<long>(hi),
                     [axis](cplx a, cplx b) { return coord(a, axis) < coord(b, axis); });
    build(lo, mid, 1 - axis);
    build(mid + 1, hi, 1 - axis);
  }

  void search(std::size_t lo, std::size_t hi, int axis, cplx q, double& best) const {
    if (hi - lo <= kLeaf) {
      for (std::size_t k = lo; k < hi; ++k) best = std::min(best, std::norm(q - pts_[k]));
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    best = std::min(best, std::norm(q - pts_[mid]));
    const double d = coord(q, axis) - coord(pts_[mid], axis);
    if (d < 0.0) {
      search(lo, mid, 1 - axis, q, best);
      if (d * d < best) search(mid + 1, hi, 1 - axis, q, best);
    } else {
      search(mid + 1, hi, 1 - axis, q, best);
      if (d * d < best) search(lo, mid, 1 - axis, q, best);
    }
  }

  static constexpr std::size_t kLeaf = 8;
  std::vector<cplx> pts_;
};

}  // namespace

double directed_distance(const std::vector<cplx>& from, const std::vector<cplx>& to) {
  if (from.empty() || to.empty()) throw std::invalid_argument("hausdorff_distance: empty point set");
  for (cplx q : from)
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) throw std::invalid_argument("hausdorff_distance: non-finite point");
  for (cplx q : to)
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) throw std::invalid_argument("hausdorff_distance: non-finite point");
  const PointTree g(to);
  const auto n = static_cast<long>(from.size());
  double worst = 0.0;
#ifdef QPS_HAVE_OPENMP
#pragma omp parallel for reduction(max : worst) schedule(static)
#endif
  for (long i = 0; i < n; ++i) worst = std::max(worst, g.nearest2(from[static_cast<std::size_t>(i)]));
  return std::sqrt(worst);
}

double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

}  // namespace qps
