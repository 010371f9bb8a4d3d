#include <doctest.h>

#include <cmath>

#include "qps/operators.hpp"
#include "support.hpp"

using namespace qps;
using qps::test::Gen;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("onb_norm") {
  // alpha = 0: ||z^n||^2 = pi / (n + 1)
  for (std::size_t n = 0; n < 8; ++n) CHECK(onb_norm(n, 0.0) == doctest::Approx(std::sqrt(kPi / (n + 1.0))).epsilon(1e-14));
  // frozen from an independent high-precision evaluation
  CHECK(onb_norm(2, 0.5) == doctest::Approx(0.69189513695864066).epsilon(1e-14));
  CHECK_THROWS(onb_norm(1, -1.0));
}

TEST_CASE("phi_n symbol") {
  const Multiplier p0 = phi_n_symbol(0, 2.0, 0.0);
  CHECK(qps::test::close(p0(0.3), std::exp(-2 * kPi * 2.0 * 0.3), 1e-15));
  // n = 2, alpha = 0: (2 pi i t)^2 e^{-2 pi beta t} / (2 * 3)
  const Multiplier p2 = phi_n_symbol(2, 1.5, 0.0);
  const double t = 0.4;
  const cplx exact = std::pow(2 * kPi * I * t, 2) * std::exp(-2 * kPi * 1.5 * t) / 6.0;
  CHECK(qps::test::close(p2(t), exact, 1e-14));
  CHECK(std::isfinite(std::abs(phi_n_symbol(400, 2.0, 0.5)(3.0))));
  CHECK_THROWS(phi_n_symbol(1, 0.0, 0.0));
}

TEST_CASE("shift operator moves samples by whole steps") {
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 20, 2.0);  // dt = 0.1
  Gen gen(51);
  const GridFunction f(g, gen.vector(20));
  const GridFunction s = shift_op(0.3, g)(f);
  for (std::size_t j = 0; j < 3; ++j) CHECK(s.values[j] == cplx(0.0));
  for (std::size_t j = 3; j < 20; ++j) CHECK(s.values[j] == f.values[j - 3]);
  CHECK_THROWS_AS(shift_op(0.125, g), IncommensurableGrid);
}

TEST_CASE("grid_for_frequencies") {
  const GridPtr g = grid_for_frequencies(0.0, {1.0, 1.5}, 100, 4.0);
  const double s1 = 1.0 / (2 * kPi), s2 = 1.5 / (2 * kPi);
  CHECK(std::abs(s1 / g->dt - std::round(s1 / g->dt)) < 1e-9);
  CHECK(std::abs(s2 / g->dt - std::round(s2 / g->dt)) < 1e-9);
  try {
    grid_for_frequencies(0.0, {1.0, std::sqrt(2.0)}, 100, 4.0);
    FAIL("expected IncommensurableGrid");
  } catch (const IncommensurableGrid& e) {
    CHECK_FALSE(e.suggestion.empty());
  }
}

TEST_CASE("Toeplitz operator of an exponential polynomial is multiplication upstairs") {
  // T_tau for tau = c0 + c e^{i gamma z} acts on the transform side as
  // c0 f^(t) + c f^(t - gamma/2pi); check against the half-plane product.
  const double gamma = 2 * kPi * 0.25;
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 1600, 8.0);  // dt = 0.005
  const cplx c0(0.2, 1.0), c1(0.3, -0.1);
  const FourierOperator t = toeplitz_exppoly(c0, {{c1, gamma}}, g);
  const GridFunction f = GridFunction::sample(g, [](double s) -> cplx { return s * s * std::exp(-2 * kPi * s); });
  const GridFunction tf = t(f);
  Gen gen(52);
  for (int k = 0; k < 5; ++k) {
    const cplx z = gen.upper(1.0, 0.5, 1.5);
    const cplx lhs = pw_inverse(tf, z);
    const cplx rhs = (c0 + c1 * std::exp(I * gamma * z)) * pw_inverse(f, z);
    CHECK(qps::test::close(lhs, rhs, 1e-8));
  }
}

TEST_CASE("weighted adjoint satisfies <Af, g> = <f, A* g>") {
  Gen gen(53);
  const GridPtr g = HalfPlaneGrid::uniform(0.7, 40, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierOperator a{g, gen.matrix(40, 40)};
    const FourierOperator as = weighted_adjoint(a);
    const GridFunction f(g, gen.vector(40)), h(g, gen.vector(40));
    CHECK(qps::test::close(fourier_inner(a(f), h), fourier_inner(f, as(h)), 1e-12));
    // norm is attained on A* A and bounds every ratio
    const double n = weighted_norm(a);
    CHECK(fourier_norm(a(f)) <= n * fourier_norm(f) * (1 + 1e-12));
    CHECK(weighted_norm(as) == doctest::Approx(n).epsilon(1e-9));
  }
}

TEST_CASE("dilation acts as f^(s/p)/p") {
  for (double p : {1.5, 0.75}) {
    const GridPtr g = HalfPlaneGrid::uniform(0.5, 1200, 6.0);
    const auto fh = [](double s) -> cplx { return s * s * std::exp(-2 * kPi * s); };
    const GridFunction f = GridFunction::sample(g, fh);
    const GridFunction d = dilation_op(p, g)(f);
    const GridFunction exact = GridFunction::sample(g, [&](double s) { return fh(s / p) / p; });
    CHECK(relative_error(d, exact) < 1e-5);  // four-point interpolation
  }
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 10, 1.0);
  CHECK(dilation_op(1.0, g).matrix(3, 3) == cplx(1.0));
  CHECK_THROWS(dilation_op(0.0, g));
}

TEST_CASE("disk composition with a rotation-dilation is diagonal") {
  const cplx s(0.3, 0.4);
  const DiskOperator d = composition_disk(Poly({0.0, s}), 0.5, 6);
  for (std::size_t i = 0; i <= 6; ++i)
    for (std::size_t j = 0; j <= 6; ++j) {
      const cplx want = i == j ? std::pow(s, static_cast<int>(i)) : cplx(0.0);
      CHECK(qps::test::close(d.matrix(i, j), want, 1e-14));
    }
  CHECK_THROWS(composition_disk(Poly({0.0, 2.0}), 0.0, 4));
}

TEST_CASE("disk Toeplitz operators") {
  const double alpha = 0.5;
  const DiskOperator tz = toeplitz_disk({{0.0, 1.0}, {}}, alpha, 8);
  for (std::size_t n = 0; n < 8; ++n)
    CHECK(tz.matrix(n + 1, n).real() == doctest::Approx(onb_norm(n + 1, alpha) / onb_norm(n, alpha)).epsilon(1e-14));
  // T_{conj z} is the adjoint of T_z
  const DiskOperator tzb = toeplitz_disk({{0.0}, {0.0, 1.0}}, alpha, 8);
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::size_t j = 0; j <= 8; ++j) CHECK(std::abs(tzb.matrix(i, j) - std::conj(tz.matrix(j, i))) < 1e-14);
}

TEST_CASE("operator algebra") {
  Gen gen(54);
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 12, 1.0);
  const FourierOperator a{g, gen.matrix(12, 12)}, b{g, gen.matrix(12, 12)};
  const GridFunction f(g, gen.vector(12));
  const GridFunction lhs = (a * b)(f), rhs = a(b(f));
  for (std::size_t j = 0; j < 12; ++j) CHECK(qps::test::close(lhs.values[j], rhs.values[j], 1e-12));
  const GridFunction s = (a + b - b)(f), af = a(f);
  for (std::size_t j = 0; j < 12; ++j) CHECK(qps::test::close(s.values[j], af.values[j], 1e-12));
}

TEST_CASE("hand examples: multipliers and shifts") {
  CHECK(onb_norm(0, 0.0) == doctest::Approx(std::sqrt(kPi)));
  CHECK(onb_norm(1, 0.0) == doctest::Approx(std::sqrt(kPi / 2)));
  for (double alpha : {0.0, 1.5}) {
    const QuadratureRule r = disk_quadrature(alpha, 32, 64);
    for (std::size_t n = 0; n <= 20; ++n) {
      double s = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) s += r.weights[k] * std::pow(std::abs(r.nodes[k]), 2.0 * n);
      CHECK(s == doctest::Approx(onb_norm(n, alpha) * onb_norm(n, alpha)).epsilon(1e-8));
    }
  }
  const GridPtr g = HalfPlaneGrid::uniform(0.5, 30, 1.5);
  const FourierOperator one = multiplier_op([](double) { return cplx(1.0); }, g);
  CHECK(weighted_norm(one) == doctest::Approx(1.0));
  // theta = e^{2 pi i a t}, a = i: f -> f(z + i)
  const FourierOperator si = multiplier_op([](double t) { return std::exp(2 * kPi * I * I * t); }, g);
  for (std::size_t j = 0; j < g->size(); ++j) CHECK(qps::test::close(si.matrix(j, j), std::exp(-2 * kPi * g->t[j]), 1e-15));
  CHECK(weighted_norm(si) == doctest::Approx(std::exp(-2 * kPi * g->t[0])).epsilon(1e-9));

  CHECK(phi_n_symbol(0, 2.0, 0.0)(0.0) == cplx(1.0));
  CHECK(qps::test::close(phi_n_symbol(1, 2.0, 0.0)(1.0), kPi * I * std::exp(-4 * kPi), 1e-14));
  CHECK(std::abs(phi_n_symbol(3, 1.0, 0.0)(200.0)) < 1e-300);

  const FourierOperator s0 = shift_op(0.0, g), s1 = shift_op(g->dt, g), s3 = shift_op(3 * g->dt, g);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) {
      CHECK(s0.matrix(i, j) == cplx(i == j ? 1.0 : 0.0));
      CHECK(s1.matrix(i, j) == cplx(i == j + 1 ? 1.0 : 0.0));
    }
  const FourierOperator cube = s1 * s1 * s1;
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) CHECK(cube.matrix(i, j) == s3.matrix(i, j));

  const FourierOperator tc = toeplitz_exppoly(cplx(0.5, 2.0), {}, g);
  CHECK(tc.matrix(4, 4) == cplx(0.5, 2.0));
  CHECK(tc.matrix(4, 3) == cplx(0.0));
  // e^{iz} on a grid with dt = 1/(2 pi m), m = 4: shift by four nodes
  const GridPtr h = HalfPlaneGrid::uniform(0.0, 40, 40.0 / (2 * kPi * 4));
  const FourierOperator te = toeplitz_exppoly(0.0, {{1.0, 1.0}}, h);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) CHECK(te.matrix(i, j) == cplx(i == j + 4 ? 1.0 : 0.0));
}

TEST_CASE("Toeplitz e^{iz} against the transform sandwich") {
  // forward(e^{iz} * inverse(f)) compared with the shifted samples
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 400, 400.0 / (80.0 * kPi));
  const double s = 1.0 / (2 * kPi);
  const auto fh = [](double t) -> cplx { return t * std::exp(-2 * kPi * t); };
  const GridFunction f = GridFunction::sample(g, fh);
  const ForwardResult r = pw_forward([&f](cplx z) { return std::exp(I * z) * pw_inverse(f, z); }, g);
  const GridFunction want = GridFunction::sample(g, [&](double t) { return t > s ? fh(t - s) : cplx(0.0); });
  CHECK(relative_error(r.f, want) < 1e-3);
}

TEST_CASE("hand examples: dilation") {
  const GridPtr g = HalfPlaneGrid::uniform(0.0, 2000, 20.0);
  const GridFunction f = GridFunction::sample(g, [](double t) -> cplx { return std::exp(-t); });
  const GridFunction d = dilation_op(2.0, g)(f);
  // e^{-t} does not vanish at 0, where the interpolation assumes a zero; skip the first nodes
  double worst = 0.0;
  for (std::size_t j = 8; j < g->size(); ++j)
    worst = std::max(worst, std::abs(d.values[j] - std::exp(-g->t[j] / 2) / 2.0));
  CHECK(worst < 1e-6);
  // ||V_p g||^2 = p^-(alpha+2) ||g||^2 for the kernel at i
  for (double alpha : {0.0, 1.0}) {
    for (double p : {1.5, 0.8}) {
      const GridPtr k = HalfPlaneGrid::uniform(alpha, 2000, 3.0);
      const GridFunction kf = GridFunction::sample(
          k, [alpha](double t) -> cplx { return std::pow(t, alpha + 1) * std::exp(-2 * kPi * t); });
      const double ratio = std::pow(fourier_norm(dilation_op(p, k)(kf)) / fourier_norm(kf), 2);
      CHECK(ratio == doctest::Approx(std::pow(p, -(alpha + 2))).epsilon(5e-5));
    }
  }
}

TEST_CASE("disk composition with a parabolic linear fractional map") {
  // phi(z) = (2iz + a(1-z)) / (2i + a(1-z)) with a = i reduces to (1+z)/(3-z)
  std::vector<cplx> c(31);
  c[0] = 1.0 / 3.0;
  for (std::size_t n = 1; n <= 30; ++n) c[n] = 4.0 / std::pow(3.0, n + 1.0);
  const Poly phi(c);
  const double alpha = 0.5;
  const std::size_t N = 8;
  const DiskOperator d = composition_disk(phi, alpha, N);
  const QuadratureRule r = disk_quadrature(alpha, 48, 96);
  const auto lft = [](cplx z) { return (1.0 + z) / (3.0 - z); };
  for (std::size_t col = 0; col <= N; ++col)
    for (std::size_t m = 0; m <= N; ++m) {
      cplx ip = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k)
        ip += r.weights[k] * std::pow(lft(r.nodes[k]), static_cast<int>(col)) *
              std::conj(std::pow(r.nodes[k], static_cast<int>(m)));
      ip /= onb_norm(col, alpha) * onb_norm(m, alpha);
      CHECK(std::abs(d.matrix(m, col) - ip) < 1e-6);
    }
  const DiskOperator id = composition_disk(Poly({0.0, 1.0}), alpha, 5);
  const DiskOperator t1 = toeplitz_disk({{1.0}, {}}, alpha, 5);
  for (std::size_t i = 0; i <= 5; ++i)
    for (std::size_t j = 0; j <= 5; ++j) {
      CHECK(std::abs(id.matrix(i, j) - cplx(i == j ? 1.0 : 0.0)) < 1e-15);
      CHECK(std::abs(t1.matrix(i, j) - cplx(i == j ? 1.0 : 0.0)) < 1e-15);
    }
}

TEST_CASE("weighted adjoint of a diagonal and involution") {
  Gen gen(55);
  const GridPtr g = HalfPlaneGrid::uniform(1.0, 50, 2.0);
  const FourierOperator d = multiplier_op([](double t) { return std::exp(cplx(-t, 3 * t)); }, g);
  const FourierOperator ds = weighted_adjoint(d);
  for (std::size_t j = 0; j < 50; ++j) CHECK(qps::test::close(ds.matrix(j, j), std::conj(d.matrix(j, j)), 1e-15));
  const FourierOperator a{g, gen.matrix(50, 50)};
  const FourierOperator aa = weighted_adjoint(weighted_adjoint(a));
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) CHECK(qps::test::close(aa.matrix(i, j), a.matrix(i, j), 1e-13));
}
