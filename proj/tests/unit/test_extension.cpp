#include <doctest.h>

#include <random>

#include "crfolio/extension.hpp"

using namespace crfolio;

TEST_SUITE("extension") {

TEST_CASE("holomorphic functions extend with tiny residual") {
  auto fam = build_rotating_circles(1, 2, 64);
  auto ext = analyze(make_function("z_sq", 1), fam, 128);
  CHECK(ext.residual < 1e-12);
  CHECK(ext.extendible());
  // F(zeta, t) = (e^{it} + 2 zeta)^2; F(0.5, 0) = 4
  CHECK(std::abs(eval_extension(ext, cx(0.5, 0), 0.0) - 4.0) < 1e-10);
}

TEST_CASE("zbar obstruction on translated circles has unit residual") {
  // f = zbar on |z - a(t)| = 1: trace is conj(a) + 1/zeta, so the
  // negative spectrum is exactly c_{-1} = 1.
  auto fam = build_translated_circles(1.0, {cx(0), cx(0.5, 0), cx(1, 0)}, 32);
  auto ext = analyze(make_function("zbar", 1), fam, 64);
  CHECK(ext.residual == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(ext.extendible());
  CHECK_THROWS_AS((void)eval_extension(ext, cx(0), 0.5), DomainError);
}

TEST_CASE("the rational counterexample trace extends") {
  auto fam = build_rotating_circles(1, 2, 128);
  auto ext = analyze(make_function("globevnik_2", 1), fam, 256);
  CHECK(ext.residual < 1e-10);
  // closed form F(zeta,t) = zeta e^{it} (e^{it} + 2 zeta)^2 / (2 e^{it} + zeta)
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    double t = kTwoPi * u(rng);
    cx zeta = 0.9 * u(rng) * std::exp(cx(0, kTwoPi * u(rng)));
    cx e = std::exp(cx(0, t));
    cx expect = zeta * e * (e + 2.0 * zeta) * (e + 2.0 * zeta) / (2.0 * e + zeta);
    CHECK(std::abs(eval_extension(ext, zeta, t) - expect) < 1e-9);
  }
}

TEST_CASE("swapped radii put the pole inside the disc") {
  auto fam = build_rotating_circles(2, 1, 64);
  auto ext = analyze(make_function("globevnik_2", 1), fam, 128);
  CHECK(ext.residual > 0.1);
}

TEST_CASE("constant functions have vanishing derivatives") {
  auto fam = build_rotating_circles(1, 2, 32);
  auto ext = analyze(make_function("const", 1), fam, 64);
  CHECK(ext.residual < 1e-13);
  CHECK(std::abs(eval_extension(ext, cx(0.3, 0.2), 1.0) - 1.0) < 1e-11);
  CHECK(std::abs(eval_extension_dzeta(ext, cx(0.3, 0.2), 1.0)) < 1e-11);
  CHECK(std::abs(eval_extension_dt(ext, cx(0.3, 0.2), 1.0)) < 1e-9);
}

TEST_CASE("extension agrees with composition for polynomial f") {
  // Circle-parameter family: the coefficient interpolation is exact for
  // bandlimited data, so extension and composition agree to quadrature
  // accuracy at arbitrary interior points.
  auto fam = build_rotating_circles(1, 2, 64);
  auto f = make_function("z_cube", 1);
  auto ext = analyze(f, fam, 128);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int k = 0; k < 100; ++k) {
    double t = kTwoPi * u(rng);
    cx zeta = 0.95 * u(rng) * std::exp(cx(0, kTwoPi * u(rng)));
    cx g = fam.eval(zeta, t);
    CHECK(std::abs(eval_extension(ext, zeta, t) - g * g * g) < 1e-10);
  }
  // Interval families interpolate coefficients with cubic splines; between
  // nodes the agreement is limited by the spline error, not quadrature.
  auto strip = build_translated_circles(1.0, {cx(0), cx(1, 1), cx(3, 0)}, 64);
  auto ext2 = analyze(f, strip, 128);
  for (int k = 0; k < 50; ++k) {
    double t = u(rng);
    cx zeta = 0.95 * u(rng) * std::exp(cx(0, kTwoPi * u(rng)));
    cx g = strip.eval(zeta, t);
    CHECK(std::abs(eval_extension(ext2, zeta, t) - g * g * g) < 1e-3);
  }
}

TEST_CASE("residual is stable under doubling the circle grid") {
  auto fam = build_rotating_circles(1, 2, 64);
  auto f = make_function("globevnik_2", 1);
  double r1 = analyze(f, fam, 128).residual;
  double r2 = analyze(f, fam, 256).residual;
  CHECK(std::abs(r1 - r2) < 1e-10);
}

TEST_CASE("moment criterion matches the spectral test") {
  auto fam = build_rotating_circles(1, 2, 64);
  // moments of z^3 against z^8 dz reach magnitude 3^11, so the quadrature
  // floor is roundoff at that scale, not 1e-12
  CHECK(moment_test(make_function("z_cube", 1), fam, 8, 128) < 1e-9);

  // f = zbar on the circle |z - 1| = 0.5: m=0 moment is 2 pi i rho^2
  auto circle = build_translated_circles(0.5, {cx(1, 0), cx(1, 0)}, 16);
  double m = moment_test(make_function("zbar", 1), circle, 0, 64);
  CHECK(m == doctest::Approx(kTwoPi * 0.25).epsilon(1e-8));
}

TEST_CASE("hopf discs give constant traces for abs_z1_sq") {
  auto fam = build_hopf_discs(6);
  auto ext = analyze(make_function("abs_z1_sq", 2), fam, 64);
  CHECK(ext.residual < 1e-12);
}

TEST_CASE("singular samples are reported with their location") {
  auto fam = build_rotating_circles(1, 2, 32);
  auto f = make_function("expr: 1/(x - x)", 1);  // division by zero everywhere
  CHECK_THROWS_AS((void)analyze(f, fam, 64), DomainError);
}

}  // TEST_SUITE
