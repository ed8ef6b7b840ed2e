#pragma once

// Dense polynomials in zeta with complex coefficients, plus a root finder
// for the closed unit disc based on argument-principle counting over a
// subdivision of boxes, with Newton polish.

#include <vector>

#include "crfolio/core.hpp"

namespace crfolio {

using Poly = std::vector<cx>;  // coeff[k] multiplies zeta^k

cx peval(const Poly& p, cx z);
Poly pderiv(const Poly& p);
Poly pmul(const Poly& a, const Poly& b);
Poly padd(const Poly& a, const Poly& b);
Poly pscale(const Poly& a, cx s);
// Multiply by zeta (shift coefficients up by one).
Poly pshift(const Poly& a);
double pmax_coeff(const Poly& p);
// Drop trailing coefficients below rel_tol * max|coeff|.
Poly ptrim(const Poly& p, double rel_tol = 1e-13);

struct PolyRoot {
  cx z;
  int multiplicity = 1;
  bool on_boundary = false;  // within boundary_tol of |z| = 1
};

// All roots of p in |z| <= 1 (+ slack), found by recursive box subdivision
// with winding counts over box boundaries and Newton polish. Multiplicities
// are recovered by a winding count on a small circle around each root.
std::vector<PolyRoot> roots_in_disc(const Poly& p, double boundary_tol = 1e-6);

// Number of zeros of p inside |z| < r (argument principle on the circle).
int zeros_inside_circle(const Poly& p, cx center, double r);

}  // namespace crfolio
