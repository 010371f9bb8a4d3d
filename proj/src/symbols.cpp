#include "qps/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qps {

namespace {
const cplx I(0.0, 1.0);

using CellKey = std::pair<long long, long long>;

CellKey cell_of(cplx v, double eps) {
  return {static_cast<long long>(std::floor(v.real() / eps)), static_cast<long long>(std::floor(v.imag() / eps))};
}

cplx cell_center(const CellKey& k, double eps) {
  return {(static_cast<double>(k.first) + 0.5) * eps, (static_cast<double>(k.second) + 0.5) * eps};
}

// Keeps the first point seen in each cell; std::map keeps output order fixed.
struct CellSet {
  double eps;
  std::map<CellKey, cplx> cells;
  void add(cplx v) { cells.emplace(cell_of(v, eps), v); }
  std::vector<cplx> points() const {
    std::vector<cplx> out;
    out.reserve(cells.size());
    for (const auto& [k, v] : cells) out.push_back(v);
    return out;
  }
};

std::vector<double> block_edges(double X) {
  std::vector<double> e{0.0};
  double b = 1.0;
  while (b < X) {
    e.push_back(b);
    b *= 2.0;
  }
  e.push_back(X);
  return e;
}

std::vector<double> boundary_abscissae(double X, std::size_t per_block) {
  if (!(X > 1.0)) throw std::invalid_argument("sample_boundary: X must exceed 1");
  if (per_block == 0) throw std::invalid_argument("sample_boundary: per_block must be positive");
  const auto edges = block_edges(X);
  std::vector<double> xs;
  xs.reserve(2 * per_block * (edges.size() - 1));
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const double lo = edges[b], hi = edges[b + 1];
    const double step = (hi - lo) / static_cast<double>(per_block);
    for (std::size_t j = 0; j < per_block; ++j) {
      const double x = lo + (static_cast<double>(j) + 0.5) * step;
      xs.push_back(x);
      xs.push_back(-x);
    }
  }
  return xs;
}
}  // namespace

// ---------------------------------------------------------------- symbols

cplx ExpPolySymbol::operator()(cplx z) const {
  cplx s = c0;
  for (const auto& t : terms) s += t.c * std::exp(I * t.gamma * z);
  return s;
}

ExpPolySymbol ExpPolySymbol::rescaled(double p) const {
  ExpPolySymbol r = *this;
  for (auto& t : r.terms) t.gamma /= p;
  return r;
}

std::vector<double> ExpPolySymbol::frequencies() const {
  std::vector<double> g;
  for (const auto& t : terms) g.push_back(t.gamma);
  return g;
}

cplx eval(const ExpPolySymbol& psi, cplx z) {
  if (z.imag() < 0.0) throw std::invalid_argument("eval: point below the real axis");
  return psi(z);
}

double im_lower_bound(const ExpPolySymbol& psi) {
  double s = psi.c0.imag();
  for (const auto& t : psi.terms) {
    if (!(t.gamma > 0.0)) throw std::invalid_argument("symbol: frequencies must be positive");
    s -= std::abs(t.c);
  }
  if (!(s > 0.0)) throw InfeasibleSymbol("symbol: Im(c0) - sum |c_k| = " + std::to_string(s) + " is not positive");
  return s;
}

Enclosure image_enclosure(const ExpPolySymbol& psi) {
  im_lower_bound(psi);
  double r = 0.0;
  for (const auto& t : psi.terms) r += std::abs(t.c);
  return {psi.c0, r};
}

// ---------------------------------------------------------------- beta selection

double beta_objective(const Enclosure& k, double beta) {
  return (std::abs(cplx(0.0, beta) - k.center) + k.radius) / beta;
}

double beta_feasible_min(const Enclosure& k) {
  const double a = k.center.real(), b = k.center.imag(), r = k.radius;
  return (a * a + b * b - r * r) / (2.0 * (b - r));
}

BetaChoice select_beta(const Enclosure& k, double margin) {
  const double a = k.center.real(), b = k.center.imag(), r = k.radius;
  if (!(r >= 0.0)) throw std::invalid_argument("select_beta: negative radius");
  if (!(b > r)) throw InfeasibleSymbol("select_beta: enclosure is not compact in the upper half-plane");
  if (!(margin >= 0.0 && margin < 1.0)) throw std::invalid_argument("select_beta: margin must lie in [0, 1)");
  const double c2 = a * a + b * b;
  double beta;
  if (r == 0.0) {
    beta = c2 / b;
  } else {
    // Stationary points solve (b^2 - r^2) beta^2 - 2 b (|c|^2 - r^2) beta + |c|^2 (|c|^2 - r^2) = 0;
    // the minimizer is the root with b beta - |c|^2 >= 0.
    const double s = std::sqrt(c2 - r * r);
    const double den = b * b - r * r;
    const double b1 = (b * (c2 - r * r) + r * std::abs(a) * s) / den;
    const double b2 = (b * (c2 - r * r) - r * std::abs(a) * s) / den;
    const double e1 = b * b1 - c2, e2 = b * b2 - c2;
    if (e1 >= -1e-12 * c2 && e2 >= -1e-12 * c2)
      beta = beta_objective(k, b1) <= beta_objective(k, b2) ? b1 : b2;
    else
      beta = e1 >= e2 ? b1 : b2;
  }
  const double delta = beta_objective(k, beta);
  if (!(delta < 1.0)) throw InfeasibleSymbol("select_beta: no beta with delta < 1");
  return {beta, delta, delta + margin * (1.0 - delta)};
}

// ---------------------------------------------------------------- ranges

SampledBoundarySymbol sample_boundary(const std::function<cplx(double)>& f, double X, std::size_t per_block) {
  SampledBoundarySymbol s;
  s.X = X;
  s.x = boundary_abscissae(X, per_block);
  s.values.resize(s.x.size());
  for (std::size_t k = 0; k < s.x.size(); ++k) s.values[k] = f(s.x[k]);
  return s;
}

RangeCloud essential_range_sampled(const SampledBoundarySymbol& s, double eps, std::vector<double> n_schedule) {
  if (!(eps > 0.0)) throw std::invalid_argument("essential_range_sampled: epsilon must be positive");
  if (s.x.size() != s.values.size()) throw std::invalid_argument("essential_range_sampled: size mismatch");
  if (n_schedule.empty()) n_schedule.push_back(0.0);
  std::sort(n_schedule.begin(), n_schedule.end());
  const double n_max = n_schedule.back();
  if (!(n_max < s.X)) throw std::invalid_argument("essential_range_sampled: schedule reaches past X");
  // A cell is kept when every window |x| > n puts a sample in it. Windows are
  // nested, so the deepest window decides.
  std::map<CellKey, std::vector<bool>> hits;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    const double ax = std::abs(s.x[k]);
    if (!(ax > n_schedule.front())) continue;
    auto& h = hits[cell_of(s.values[k], eps)];
    if (h.empty()) h.assign(n_schedule.size(), false);
    for (std::size_t i = 0; i < n_schedule.size(); ++i)
      if (ax > n_schedule[i]) h[i] = true;
  }
  RangeCloud rc;
  rc.epsilon = eps;
  rc.n_max = n_max;
  for (const auto& [key, h] : hits)
    if (std::all_of(h.begin(), h.end(), [](bool b) { return b; })) rc.points.push_back(cell_center(key, eps));
  if (rc.points.empty()) throw std::runtime_error("essential_range_sampled: empty range (under-sampled window)");
  return rc;
}

std::optional<std::pair<long long, long long>> rational_ratio(double a, double b, long long cap, double tol) {
  const double r = b / a;
  if (!(r > 0.0) || !std::isfinite(r)) return std::nullopt;
  long long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  double x = r;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(x);
    if (fl > 1e15) return std::nullopt;
    const auto an = static_cast<long long>(fl);
    const long long h = an * h1 + h2, k = an * k1 + k2;
    if (k > cap) return std::nullopt;
    if (std::abs(r - static_cast<double>(h) / static_cast<double>(k)) <= tol * r) return std::make_pair(h, k);
    const double frac = x - fl;
    if (frac <= 0.0) return std::make_pair(h, k);
    x = 1.0 / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return std::nullopt;
}

namespace {

struct FreqClass {
  double base;
  std::vector<ExpTerm> members;
  std::vector<std::pair<long long, long long>> ratio;  // gamma = base * p / q
};

void add_circle(CellSet& out, double radius, double resolution) {
  if (radius == 0.0) {
    out.add(0.0);
    return;
  }
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * kPi * radius / (0.5 * resolution))) + 8;
  for (std::size_t j = 0; j < n; ++j) out.add(std::polar(radius, 2.0 * kPi * static_cast<double>(j) / n));
}

constexpr double kMaxOrbitSamples = 2e7;

}  // namespace

RangeCloud essential_range_exppoly(const ExpPolySymbol& psi, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("essential_range_exppoly: resolution must be positive");
  RangeCloud rc;
  rc.epsilon = resolution;
  rc.n_max = std::numeric_limits<double>::infinity();
  if (psi.terms.empty()) {
    rc.points = {psi.c0};
    return rc;
  }
  std::vector<FreqClass> classes;
  for (const auto& t : psi.terms) {
    if (!(t.gamma > 0.0)) throw std::invalid_argument("symbol: frequencies must be positive");
    bool placed = false;
    for (auto& c : classes) {
      if (auto pq = rational_ratio(c.base, t.gamma)) {
        c.members.push_back(t);
        c.ratio.push_back(*pq);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({t.gamma, {t}, {{1, 1}}});
  }
  // Each class traces a closed curve; independent classes combine as a
  // Minkowski sum (Kronecker density of the independent phases).
  std::vector<cplx> acc{psi.c0};
  for (const auto& c : classes) {
    CellSet part{resolution, {}};
    long long L = 1;
    for (const auto& pq : c.ratio) L = std::lcm(L, pq.second);
    const double period = 2.0 * kPi * static_cast<double>(L) / c.base;
    double speed = 0.0;
    for (const auto& m : c.members) speed += std::abs(m.c) * m.gamma;
    const double step = 0.5 * resolution / std::max(speed, 1e-300);
    const double count = std::ceil(period / step);
    if (count <= kMaxOrbitSamples) {
      const auto n = static_cast<std::size_t>(count);
      for (std::size_t j = 0; j < n; ++j) {
        const double x = period * static_cast<double>(j) / static_cast<double>(n);
        cplx v = 0.0;
        for (const auto& m : c.members) v += m.c * std::exp(I * m.gamma * x);
        part.add(v);
      }
    } else {
      // The orbit is too long to sample and already fills the torus image at
      // this resolution; use independent phases.
      std::vector<cplx> sub{0.0};
      for (const auto& m : c.members) {
        CellSet circ{resolution, {}};
        add_circle(circ, std::abs(m.c), resolution);
        CellSet next{resolution, {}};
        for (const auto& s : sub)
          for (const auto& q : circ.points()) next.add(s + q);
        sub = next.points();
      }
      for (const auto& s : sub) part.add(s);
    }
    CellSet next{resolution, {}};
    const auto pts = part.points();
    for (const auto& s : acc)
      for (const auto& q : pts) next.add(s + q);
    acc = next.points();
  }
  rc.points = std::move(acc);
  return rc;
}

double arc_to_line(double theta) { return -std::cos(0.5 * theta) / std::sin(0.5 * theta); }

double line_to_arc(double x) { return x == 0.0 ? -kPi : -2.0 * std::atan(1.0 / x); }

ArcSamples sample_arc(const std::function<cplx(cplx)>& eta, double X, std::size_t per_block) {
  ArcSamples s;
  for (double x : boundary_abscissae(X, per_block)) {
    const double th = line_to_arc(x);
    s.theta.push_back(th);
    s.values.push_back(eta(std::polar(1.0, th)));
  }
  return s;
}

RangeCloud pullback_range_disk(const ArcSamples& s, double eps, std::vector<double> n_schedule) {
  if (s.theta.size() != s.values.size()) throw std::invalid_argument("pullback_range_disk: size mismatch");
  SampledBoundarySymbol line;
  for (std::size_t k = 0; k < s.theta.size(); ++k) {
    if (s.theta[k] == 0.0) continue;
    const double x = arc_to_line(s.theta[k]);
    line.x.push_back(x);
    line.values.push_back(s.values[k]);
    line.X = std::max(line.X, std::abs(x));
  }
  return essential_range_sampled(line, eps, std::move(n_schedule));
}

}  // namespace qps
