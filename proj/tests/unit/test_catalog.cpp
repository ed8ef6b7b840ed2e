#include <doctest.h>

#include "crfolio/catalog.hpp"

using namespace crfolio;

TEST_SUITE("catalog") {

TEST_CASE("builtin planar functions") {
  auto zsq = make_function("z_sq", 1);
  cx z(0.3, -0.8);
  CHECK(std::abs(zsq.value({z, cx(0)}) - z * z) < 1e-14);
  CHECK(std::abs(zsq.dzbar({z, cx(0)}, 0)) < 1e-14);

  auto zbar = make_function("zbar", 1);
  CHECK(std::abs(zbar.value({z, cx(0)}) - std::conj(z)) < 1e-14);
  CHECK(std::abs(zbar.dzbar({z, cx(0)}, 0) - 1.0) < 1e-14);

  auto glob = make_function("globevnik_2", 1);
  CHECK(std::abs(glob.value({z, cx(0)}) - z * z / std::conj(z)) < 1e-13);
  // dbar (z^2 / zbar) = -z^2 / zbar^2
  cx expect = -z * z / (std::conj(z) * std::conj(z));
  CHECK(std::abs(glob.dzbar({z, cx(0)}, 0) - expect) < 1e-12);
}

TEST_CASE("two-variable functions") {
  auto f = make_function("abs_z1_sq", 2);
  cx z1(0.4, 0.1), z2(-0.2, 0.9);
  CHECK(std::abs(f.value({z1, z2}) - std::norm(z1)) < 1e-14);
  CHECK(std::abs(f.dzbar({z1, z2}, 0) - z1) < 1e-14);
  CHECK(std::abs(f.dzbar({z1, z2}, 1)) < 1e-14);
}

TEST_CASE("expression parser") {
  auto f = make_function("expr: (x + i*y)^2", 1);
  cx z(0.7, -0.3);
  CHECK(std::abs(f.value({z, cx(0)}) - z * z) < 1e-12);

  auto g = make_function("expr: x*x + y*y", 1);
  CHECK(std::abs(g.value({z, cx(0)}) - std::norm(z)) < 1e-12);
  // finite-difference Wirtinger derivatives: dbar(|z|^2) = z
  CHECK(std::abs(g.dzbar({z, cx(0)}, 0) - z) < 1e-6);

  auto h = make_function("expr: sin(x) + exp(y)", 1);
  CHECK(std::abs(h.value({z, cx(0)}) -
                 (std::sin(0.7) + std::exp(-0.3))) < 1e-12);
}

TEST_CASE("expression parser rejects malformed input") {
  CHECK_THROWS_AS(make_function("expr: x + ", 1), ConfigError);
  CHECK_THROWS_AS(make_function("expr: (x", 1), ConfigError);
  CHECK_THROWS_AS(make_function("no_such_function", 1), ConfigError);
}

TEST_CASE("surfaces") {
  auto s = make_surface("sphere");
  CHECK(std::abs(s.rho({cx(1, 0), cx(0)})) < 1e-14);
  CHECK(std::abs(s.rho({cx(0.5, 0), cx(0)}) + 0.75) < 1e-14);
  cx z1(0.3, 0.4), z2(0.1, -0.2);
  CHECK(std::abs(s.dbar_rho({z1, z2}, 0) - z1) < 1e-13);
  CHECK(std::abs(s.dbar_rho({z1, z2}, 1) - z2) < 1e-13);

  auto q = make_surface("quadric:1,1,0,0,0,0,-1");
  CHECK(std::abs(q.rho({cx(1, 0), cx(0)})) < 1e-13);
  CHECK_THROWS_AS(make_surface("quadric:1,2"), ConfigError);
  CHECK_THROWS_AS(make_surface("unknown"), ConfigError);
}

TEST_CASE("catalog listing is stable") {
  std::string a = list_catalog(), b = list_catalog();
  CHECK(a == b);
  CHECK(a.find("rotating_circles") != std::string::npos);
  CHECK(a.find("hopf_discs") != std::string::npos);
  CHECK(a.find("sphere") != std::string::npos);
}

}  // TEST_SUITE
