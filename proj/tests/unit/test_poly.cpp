#include <doctest.h>

#include <algorithm>

#include "crfolio/poly.hpp"

using namespace crfolio;

TEST_SUITE("poly") {

TEST_CASE("arithmetic basics") {
  Poly a{1.0, 2.0, 1.0};  // (1 + z)^2
  Poly b{cx(0, 1), 1.0};
  CHECK(std::abs(peval(a, cx(0.5, 0)) - 2.25) < 1e-14);
  Poly d = pderiv(a);
  CHECK(d.size() == 2);
  CHECK(std::abs(peval(d, cx(0.3, 0)) - 2.6) < 1e-14);
  Poly m = pmul(a, b);
  cx z(0.2, -0.4);
  CHECK(std::abs(peval(m, z) - peval(a, z) * peval(b, z)) < 1e-14);
  CHECK(std::abs(peval(pshift(a), z) - z * peval(a, z)) < 1e-14);
}

TEST_CASE("roots of a cubic with known zeros") {
  // z (z - 0.5) (z - (0.2 + 0.3i))
  Poly p = pmul(Poly{0.0, 1.0}, pmul(Poly{-0.5, 1.0}, Poly{cx(-0.2, -0.3), 1.0}));
  auto roots = roots_in_disc(p);
  REQUIRE(roots.size() == 3);
  auto has = [&](cx w) {
    return std::any_of(roots.begin(), roots.end(), [&](const PolyRoot& r) {
      return std::abs(r.z - w) < 1e-9 && r.multiplicity == 1;
    });
  };
  CHECK(has(cx(0)));
  CHECK(has(cx(0.5, 0)));
  CHECK(has(cx(0.2, 0.3)));
}

TEST_CASE("multiple roots carry their multiplicity") {
  Poly p{0.0, 0.0, 1.0};  // z^2
  auto roots = roots_in_disc(p);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].z) < 1e-9);
  CHECK(roots[0].multiplicity == 2);
}

TEST_CASE("roots outside the disc are ignored") {
  Poly p = pmul(Poly{-0.3, 1.0}, Poly{-2.0, 1.0});  // zeros 0.3 and 2
  auto roots = roots_in_disc(p);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].z - 0.3) < 1e-9);
}

TEST_CASE("boundary roots are flagged") {
  Poly p{-1.0, 0.0, 1.0};  // zeros at +-1
  auto roots = roots_in_disc(p);
  CHECK(roots.size() == 2);
  for (const auto& r : roots) CHECK(r.on_boundary);
}

TEST_CASE("argument-principle circle count") {
  Poly p = pmul(Poly{0.0, 1.0}, Poly{cx(-0.5, 0), 1.0});
  CHECK(zeros_inside_circle(p, cx(0), 0.25) == 1);
  CHECK(zeros_inside_circle(p, cx(0), 0.75) == 2);
  CHECK(zeros_inside_circle(p, cx(2, 0), 0.5) == 0);
}

TEST_CASE("trim removes numerical tails") {
  Poly p{1.0, 1.0, 1e-16};
  CHECK(ptrim(p).size() == 2);
}

}  // TEST_SUITE
