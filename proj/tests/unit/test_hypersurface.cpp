#include <doctest.h>

#include "crfolio/hypersurface.hpp"

using namespace crfolio;

TEST_SUITE("hypersurface") {

TEST_CASE("minors vanish for functionally dependent F") {
  auto fam = build_hopf_discs(6);
  // f = |z1|^2 has constant trace per disc: F is zeta-independent
  auto ext = analyze(make_function("abs_z1_sq", 2), fam, 64);
  auto minors = compute_minors(ext);
  CHECK(minors.center_max < 1e-10);
  CHECK(lemma34_check(minors));
}

TEST_CASE("K reality on the hopf family") {
  auto fam = build_hopf_discs(6);
  auto rep = k_mu_reality(fam, make_surface("sphere"));
  CHECK(rep.max_incidence < 1e-8);
  CHECK(rep.max_rel_imag < 1e-8);
  CHECK(rep.samples > 0);
}

TEST_CASE("K reality on the tangent line family") {
  auto fam = build_tangent_lines(1.0, 0.5, 6);
  auto rep = k_mu_reality(fam, make_surface("sphere"));
  CHECK(rep.max_incidence < 1e-8);
  CHECK(rep.max_rel_imag < 1e-8);
}

TEST_CASE("incidence precondition is enforced") {
  auto fam = build_hopf_discs(4);
  // circles of this family do not lie on a shifted sphere
  auto off = make_surface("quadric:1,1,0.5,0,0,0,-1");
  CHECK_THROWS_AS((void)k_mu_reality(fam, off), ConfigError);
}

TEST_CASE("tangential residual of holomorphic functions vanishes") {
  auto surf = make_surface("sphere");
  std::vector<std::array<cx, 2>> pts = {
      {cx(1, 0), cx(0)},
      {cx(1 / std::sqrt(2.0), 0), cx(1 / std::sqrt(2.0), 0)},
      {cx(0.6, 0), cx(0, 0.8)}};
  double res = tangential_cr_residual(make_function("expr: x + i*y", 2), surf, pts);
  CHECK(res < 1e-8);
}

TEST_CASE("tangential residual of |z1|^2 at the diagonal point is 1/2") {
  auto surf = make_surface("sphere");
  double s = 1 / std::sqrt(2.0);
  double res = tangential_cr_residual(make_function("abs_z1_sq", 2), surf,
                                      {{cx(s, 0), cx(s, 0)}});
  CHECK(res == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("tangential residual of zbar2 at selected points") {
  auto surf = make_surface("sphere");
  auto f = make_function("expr: x2 - i*y2", 2);
  // at (0, 1): dbar_b f = z1 * 1 - z2 * 0 = 0
  CHECK(tangential_cr_residual(f, surf, {{cx(0), cx(1, 0)}}) < 1e-8);
  double s = 1 / std::sqrt(2.0);
  CHECK(tangential_cr_residual(f, surf, {{cx(s, 0), cx(s, 0)}}) ==
        doctest::Approx(s).epsilon(1e-4));
}

TEST_CASE("off-surface samples are rejected") {
  auto surf = make_surface("sphere");
  CHECK_THROWS_AS((void)tangential_cr_residual(make_function("abs_z1_sq", 2),
                                               surf, {{cx(0.5, 0), cx(0)}}),
                  DomainError);
}

}  // TEST_SUITE
