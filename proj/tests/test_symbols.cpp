#include <doctest.h>

#include <cmath>

#include "qps/spaces.hpp"
#include "qps/spectra.hpp"
#include "qps/symbols.hpp"
#include "support.hpp"

using namespace qps;
using qps::test::Gen;

namespace {
const cplx I(0.0, 1.0);

ExpPolySymbol circle_symbol() { return {2.0 * I, {{0.5, 1.0}}}; }

// brute-force minimum of (|i b - c| + r) / b over a fine log grid plus a golden refinement
double brute_delta(const Enclosure& k) {
  double best = 1e300, arg = 0.0;
  for (int j = 0; j <= 20000; ++j) {
    const double b = std::exp(-6.0 + 14.0 * j / 20000.0);
    const double v = (std::abs(I * b - k.center) + k.radius) / b;
    if (v < best) best = v, arg = b;
  }
  double lo = arg * 0.998, hi = arg * 1.002;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    const double f1 = (std::abs(I * m1 - k.center) + k.radius) / m1;
    const double f2 = (std::abs(I * m2 - k.center) + k.radius) / m2;
    (f1 < f2 ? hi : lo) = (f1 < f2 ? m2 : m1);
  }
  const double b = 0.5 * (lo + hi);
  return std::min(best, (std::abs(I * b - k.center) + k.radius) / b);
}
}  // namespace

TEST_CASE("symbol evaluation and rescaling") {
  const ExpPolySymbol psi = circle_symbol();
  const cplx z(0.3, 0.7);
  CHECK(qps::test::close(psi(z), 2.0 * I + 0.5 * std::exp(I * z), 1e-15));
  CHECK(qps::test::close(psi.rescaled(2.0)(z), psi(z / 2.0), 1e-15));
  CHECK(im_lower_bound(psi) == doctest::Approx(1.5));
}

TEST_CASE("select_beta on hand-solved symbols") {
  // 2i + 0.5 e^{iz}: (|b - 2| + 0.5)/b has its minimum 1/4 at b = 2
  const BetaChoice a = select_beta(image_enclosure(circle_symbol()));
  CHECK(a.beta == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(a.delta == doctest::Approx(0.25).epsilon(1e-10));
  // constant 1 + i: ((b-1)^2 + 1)/b^2 is minimal at b = 2, value 1/2
  const BetaChoice b = select_beta(image_enclosure({cplx(1.0, 1.0), {}}));
  CHECK(b.beta == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.delta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("select_beta property: matches brute force and stays below 1") {
  Gen gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const cplx c = gen.upper(3.0, 0.2, 4.0);
    const double r = gen.uniform(0.0, 0.9) * c.imag();
    const Enclosure k{c, r};
    const BetaChoice ch = select_beta(k);
    CHECK(ch.delta < 1.0);
    CHECK(ch.delta == doctest::Approx(brute_delta(k)).epsilon(1e-7));
    CHECK(ch.delta == doctest::Approx(beta_objective(k, ch.beta)).epsilon(1e-12));
    const double m = gen.uniform(0.0, 0.5);
    const BetaChoice cm = select_beta(k, m);
    CHECK(cm.delta_certified == doctest::Approx(cm.delta + m * (1 - cm.delta)).epsilon(1e-12));
  }
}

TEST_CASE("infeasible symbols are rejected") {
  CHECK_THROWS_AS(im_lower_bound({0.5 * I, {{0.5, 1.0}}}), InfeasibleSymbol);
  CHECK_THROWS_AS(im_lower_bound({cplx(1.0, -0.1), {}}), InfeasibleSymbol);
  CHECK_THROWS_AS(select_beta({cplx(0.0, 1.0), 1.0}), InfeasibleSymbol);
}

TEST_CASE("image enclosure contains sampled values") {
  Gen gen(42);
  const ExpPolySymbol psi{cplx(0.5, 3.0), {{cplx(0.3, 0.2), 1.0}, {cplx(-0.4, 0.1), 2.5}}};
  const Enclosure k = image_enclosure(psi);
  for (int j = 0; j < 500; ++j) {
    const cplx z = gen.upper(50.0, 0.0, 5.0);
    CHECK(std::abs(psi(z) - k.center) <= k.radius + 1e-12);
  }
}

TEST_CASE("rational_ratio") {
  const auto a = rational_ratio(1.0, 1.5);
  REQUIRE(a);
  CHECK(a->first == 3);
  CHECK(a->second == 2);
  const auto b = rational_ratio(2.0, 2.0 * 355.0 / 113.0);
  REQUIRE(b);
  CHECK(b->first == 355);
  CHECK(b->second == 113);
  // with the default cap, sqrt(2) has convergents inside 1e-9; a small cap rejects it
  CHECK(rational_ratio(1.0, std::sqrt(2.0)));
  CHECK_FALSE(rational_ratio(1.0, std::sqrt(2.0), 1000));
  CHECK_FALSE(rational_ratio(1.0, kPi, 1000));
}

TEST_CASE("boundary sampling covers dyadic blocks on both sides") {
  const SampledBoundarySymbol s = sample_boundary([](double x) -> cplx { return x; }, 100.0, 10);
  // blocks [0,1],[1,2],...,[64,100]: 8 blocks, both signs
  CHECK(s.x.size() == 2 * 8 * 10);
  double lo = 0, hi = 0;
  for (double x : s.x) lo = std::min(lo, x), hi = std::max(hi, x);
  CHECK(hi < 100.0);
  CHECK(hi > 97.0);
  CHECK(lo == doctest::Approx(-hi));
}

TEST_CASE("sampled essential range of a periodic symbol is the circle") {
  const auto s = sample_boundary([](double x) { return 2.0 * I + 0.5 * std::exp(I * x); }, 2000.0, 4000);
  const RangeCloud rc = essential_range_sampled(s, 0.02, {10, 100, 1000});
  std::vector<cplx> circle;
  for (int k = 0; k < 2048; ++k) circle.push_back(2.0 * I + 0.5 * std::polar(1.0, 2 * kPi * k / 2048));
  CHECK(hausdorff_distance(rc.points, circle) < 0.04);
}

TEST_CASE("sampled essential range forgets decaying parts") {
  const auto s = sample_boundary([](double x) { return 2.0 * I + 0.5 * std::exp(I * x) / (1 + std::abs(x)); },
                                 2000.0, 2000);
  const RangeCloud rc = essential_range_sampled(s, 0.02, {10, 100, 1000});
  for (cplx v : rc.points) CHECK(std::abs(v - 2.0 * I) < 0.02);
}

TEST_CASE("exponential-polynomial range") {
  const RangeCloud c = essential_range_exppoly({cplx(1.0, 1.0), {}}, 0.01);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0] == cplx(1.0, 1.0));
  const RangeCloud r = essential_range_exppoly(circle_symbol(), 0.01);
  for (cplx v : r.points) CHECK(std::abs(std::abs(v - 2.0 * I) - 0.5) < 1e-12);
  // commensurable pair: every point is an attained value psi(x)
  const ExpPolySymbol two{2.0 * I, {{0.5, 1.0}, {0.25, 2.0}}};
  const RangeCloud t = essential_range_exppoly(two, 0.01);
  std::vector<cplx> dense;
  for (int k = 0; k < 20000; ++k) dense.push_back(two(cplx(2 * kPi * k / 20000, 0)));
  CHECK(hausdorff_distance(t.points, dense) < 0.02);
}

TEST_CASE("arc and line parametrizations are inverse") {
  Gen gen(43);
  for (int k = 0; k < 100; ++k) {
    const double x = gen.uniform(-1e3, 1e3);
    CHECK(arc_to_line(line_to_arc(x)) == doctest::Approx(x).epsilon(1e-9));
    // inverse Cayley of the arc point lands on x
    CHECK(qps::test::close(inverse_cayley(std::polar(1.0, line_to_arc(x))), cplx(x, 0.0), 1e-8));
  }
}

TEST_CASE("hand examples: evaluation and bounds") {
  const ExpPolySymbol c{2.0 * I, {}};
  CHECK(c(cplx(5.0, 3.0)) == 2.0 * I);
  const ExpPolySymbol psi = circle_symbol();
  CHECK(qps::test::close(psi(0.0), 2.0 * I + 0.5, 1e-15));
  CHECK(qps::test::close(eval(psi, I), cplx(0.5 * std::exp(-1.0), 2.0), 1e-15));
  CHECK(im_lower_bound(c) == 2.0);
  CHECK_THROWS_AS(im_lower_bound({I, {{2.0, 1.0}}}), InfeasibleSymbol);
  const Enclosure e0 = image_enclosure(c);
  CHECK(e0.center == 2.0 * I);
  CHECK(e0.radius == 0.0);
  const Enclosure e2 = image_enclosure({3.0 * I, {{0.5, 1.0}, {0.25, std::sqrt(2.0)}}});
  CHECK(e2.center == 3.0 * I);
  CHECK(e2.radius == doctest::Approx(0.75));
  const BetaChoice b0 = select_beta(e0);
  CHECK(b0.beta == doctest::Approx(2.0));
  CHECK(b0.delta < 1e-12);
  const BetaChoice b1 = select_beta({cplx(1.0, 2.0), 0.5});
  CHECK(b1.delta < 1.0);
  double grid_min = 1e300;
  for (int k = 0; k <= 100000; ++k) {
    const double b = 1.3 + (100.0 - 1.3) * k / 100000.0;
    grid_min = std::min(grid_min, beta_objective({cplx(1.0, 2.0), 0.5}, b));
  }
  CHECK(b1.delta <= grid_min + 1e-9);
}

TEST_CASE("hand examples: sampled ranges") {
  const double eps = 0.02;
  const auto conv = sample_boundary([](double x) { return 2.0 * I + 1.0 / (x + I); }, 1e4, 2000);
  for (cplx v : essential_range_sampled(conv, eps, {10, 100, 1000}).points) CHECK(std::abs(v - 2.0 * I) < eps);
  // +-0.5 alternating on dyadic blocks: both values persist at infinity
  const auto step = sample_boundary(
      [](double x) {
        const int b = static_cast<int>(std::floor(std::log2(std::max(std::abs(x), 1.0))));
        return 2.0 * I + (b % 2 ? 0.5 : -0.5);
      },
      1e4, 500);
  const auto pts = essential_range_sampled(step, eps, {10, 100, 1000}).points;
  CHECK(directed_distance({2.0 * I + 0.5, 2.0 * I - 0.5}, pts) < eps);
  // the disk-side estimator on eta = psi o inverse Cayley reproduces the line-side cloud cell for cell
  const auto eta = [](cplx w) { return 2.0 * I + 0.5 * std::exp(I * inverse_cayley(w)); };
  const RangeCloud disk = pullback_range_disk(sample_arc(eta, 1e3, 500), eps, {10, 100});
  const RangeCloud line = essential_range_sampled(
      sample_boundary([](double x) { return 2.0 * I + 0.5 * std::exp(I * x); }, 1e3, 500), eps, {10, 100});
  CHECK(hausdorff_distance(disk.points, line.points) < std::sqrt(2.0) * eps);
  const RangeCloud cst = pullback_range_disk(sample_arc([](cplx) { return cplx(1.0, 1.0); }, 1e3, 50), eps, {10});
  REQUIRE(cst.points.size() == 1);
  CHECK(std::abs(cst.points[0] - cplx(1.0, 1.0)) < eps);
}

TEST_CASE("independent frequencies fill an annulus") {
  const RangeCloud r = essential_range_exppoly({3.0 * I, {{0.5, 1.0}, {0.25, std::sqrt(2.0)}}}, 0.02);
  double lo = 1e300, hi = 0.0;
  for (cplx v : r.points) lo = std::min(lo, std::abs(v - 3.0 * I)), hi = std::max(hi, std::abs(v - 3.0 * I));
  CHECK(lo < 0.25 + 0.03);
  CHECK(lo > 0.25 - 0.03);
  CHECK(hi > 0.75 - 0.03);
  CHECK(hi < 0.75 + 0.03);
  // every radius in between is hit
  for (double rad = 0.3; rad < 0.72; rad += 0.05) {
    double best = 1e300;
    for (cplx v : r.points) best = std::min(best, std::abs(std::abs(v - 3.0 * I) - rad));
    CHECK(best < 0.02);
  }
}
