#include <doctest.h>

#include <cmath>

#include "qps/approximation.hpp"
#include "support.hpp"

using namespace qps;
using qps::test::Gen;

namespace {
const cplx I(0.0, 1.0);
ExpPolySymbol circle_symbol() { return {2.0 * I, {{0.5, 1.0}}}; }
}  // namespace

TEST_CASE("series coefficients") {
  for (std::size_t n = 0; n < 10; ++n) CHECK(series_coefficient(n, 0.0) == doctest::Approx(n + 1.0).epsilon(1e-13));
  // Gamma(5.5) / (3! Gamma(2.5))
  CHECK(series_coefficient(3, 0.5) == doctest::Approx(6.5625).epsilon(1e-13));
}

TEST_CASE("tail bound: frozen values and both routes") {
  CHECK(tail_bound(10, 0.25, 0.0) == doctest::Approx(3.92066107855902778e-06).epsilon(1e-12));
  CHECK(tail_bound(5, 0.3, 0.5) == doctest::Approx(0.0167096770536094693).epsilon(1e-10));
  Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t M = gen.index(60);
    const double d = gen.uniform(0.01, 0.9);
    CHECK(tail_bound(M, d, 0.0) == doctest::Approx(tail_bound_summed(M, d, 0.0)).epsilon(1e-11));
    // monotone in M
    const double a = gen.uniform(0.0, 2.0);
    CHECK(tail_bound(M + 1, d, a) <= tail_bound(M, d, a));
  }
}

TEST_CASE("plan_series picks the smallest order under the target") {
  const SeriesPlan plan = plan_series(circle_symbol(), 1.0, 0.0, 1e-6);
  CHECK(plan.beta == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(plan.delta == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(plan.M == 12);
  CHECK(plan.tail <= 1e-6);
  CHECK(tail_bound(11, plan.delta, 0.0) > 1e-6);
  CHECK(plan.coefficients.size() == 13);
  const SeriesPlan c = plan_series({cplx(0.0, 2.0), {}}, 1.0, 0.0, 1e-6);
  CHECK(c.M == 0);
  CHECK(c.delta == 0.0);
}

TEST_CASE("constant symbol gives the exact diagonal operator") {
  // f(z + 2i) on the transform side is e^{-4 pi t} f^(t)
  const ExpPolySymbol psi{2.0 * I, {}};
  const SeriesPlan plan = plan_series(psi, 1.0, 0.0, 1e-8);
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 100, 2.0);
  const FourierOperator op = assemble_series(plan, psi, g);
  for (std::size_t i = 0; i < g->size(); ++i)
    for (std::size_t j = 0; j < g->size(); ++j) {
      const cplx want = i == j ? std::exp(-4 * kPi * g->t[i]) : 0.0;
      CHECK(std::abs(op.matrix(i, j) - want) < 1e-12);
    }
}

TEST_CASE("series operator composes: dual route through the closed-form transform") {
  const ExpPolySymbol psi = circle_symbol();
  for (double p : {1.0, 1.5, 0.75}) {
    const double alpha = 0.0;
    const SeriesPlan plan = plan_series(psi, p, alpha, 1e-10);
    const GridPtr g = grid_for_plan(plan, psi, 800, 8.0);
    const FourierOperator op = assemble_series(plan, psi, g);
    const GridFunction f =
        GridFunction::sample(g, [](double t) -> cplx { return t * t * std::exp(-2 * kPi * t); });
    const GridFunction cf = op(f);
    Gen gen(62);
    for (int k = 0; k < 4; ++k) {
      const cplx z = gen.upper(1.0, 0.2, 1.0);
      const cplx want = laplace_power(3.0, 1.0, p * z + psi(z));
      CHECK(std::abs(pw_inverse(cf, z) - want) < 1e-4 * std::abs(want));
    }
  }
}

TEST_CASE("measured residual stays under the analytic tail") {
  const ExpPolySymbol psi = circle_symbol();
  const SeriesPlan plan = plan_with_order(psi, 1.0, 0.0, 20);
  const GridPtr g = grid_for_plan(plan, psi, 400, 8.0);
  for (std::size_t M : {2u, 5u, 8u}) CHECK(series_residual(plan, psi, g, M) <= tail_bound(M, plan.delta, 0.0));
}

TEST_CASE("auto t_max") {
  CHECK(auto_t_max(2.0) == doctest::Approx(-std::log(1e-12) / (4 * kPi)));
}

TEST_CASE("hand examples: coefficients, tail, plan monotonicity") {
  for (double a : {0.0, 0.5, 2.0}) CHECK(series_coefficient(0, a) == doctest::Approx(1.0));
  CHECK(series_coefficient(2, 1.0) == doctest::Approx(6.0));
  CHECK(tail_bound(7, 0.0, 0.3) == 0.0);
  std::size_t last = 0;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    const SeriesPlan p = plan_series(circle_symbol(), 1.0, 0.5, eps);
    CHECK(p.M >= last);
    last = p.M;
  }
}

TEST_CASE("one more term moves the operator by at most its coefficient bound") {
  const ExpPolySymbol psi = circle_symbol();
  const SeriesPlan plan = plan_with_order(psi, 1.0, 0.0, 12);
  const GridPtr g = grid_for_plan(plan, psi, 400, 8.0);
  for (std::size_t M : {1u, 3u, 6u, 10u}) {
    const double step = weighted_norm(assemble_series_range(plan, psi, g, M + 1, M + 1));
    CHECK(step <= series_coefficient(M + 1, 0.0) * std::pow(plan.delta, M + 1.0) * (1 + 1e-9));
  }
}

TEST_CASE("series action against the transform sandwich") {
  // inverse transform, compose, forward transform, compare with the assembled action
  const ExpPolySymbol psi = circle_symbol();
  const SeriesPlan plan = plan_series(psi, 1.0, 0.0, 1e-8);
  const GridPtr g = grid_for_plan(plan, psi, 400, 400.0 / (80.0 * kPi));
  const GridFunction f = GridFunction::sample(g, [](double t) -> cplx { return t * std::exp(-2 * kPi * t); });
  const GridFunction got = assemble_series(plan, psi, g)(f);
  // the discrete inverse is periodic on the strip, and so is its composition with psi
  const ForwardResult want = pw_forward([&](cplx z) { return pw_inverse(f, z + psi(z)); }, g);
  CHECK(relative_error(got, want.f) < plan.tail + 1e-4);
}
