#pragma once

// Builtin boundary functions and hypersurfaces, plus a small expression
// language ("expr: ...") over the real coordinates x1, y1, x2, y2.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "crfolio/core.hpp"

namespace crfolio {

struct BoundaryFunction {
  std::string name;
  int arity = 1;  // number of complex arguments
  std::string smoothness_note;
  std::function<cx(const std::vector<cx>&)> value;
  // Wirtinger derivatives d/dz_j and d/dzbar_j; symbolic for builtins,
  // central finite differences (step 1e-5) for parsed expressions.
  std::function<cx(const std::vector<cx>&, int)> dz;
  std::function<cx(const std::vector<cx>&, int)> dzbar;
  bool symbolic_derivatives = false;
};

// Accepted specs: "z_sq", "z_cube", "zbar", "globevnik_<n>" (z^n / zbar),
// "abs_z1_sq", "const", "expr:<expression>".  The expression language has
// variables x, y (aliases x1, y1) and x2, y2, the imaginary unit i,
// numbers, + - * / ^ and sin, cos, exp, sqrt, abs, parentheses.
BoundaryFunction make_function(const std::string& spec, int arity);

struct Hypersurface {
  std::string name;
  std::function<double(const std::array<cx, 2>&)> rho;
  std::function<cx(const std::array<cx, 2>&, int)> drho;      // d/dz_j
  std::function<cx(const std::array<cx, 2>&, int)> dbar_rho;  // d/dzbar_j
};

// Accepted specs: "sphere" (|z1|^2 + |z2|^2 - 1) and
// "quadric:a1,a2,b1,c1,b2,c2,d" for
// a1|z1|^2 + a2|z2|^2 + b1 Re z1 + c1 Im z1 + b2 Re z2 + c2 Im z2 + d.
Hypersurface make_surface(const std::string& spec);

// Stable, sorted listing of builtin families, functions and surfaces.
std::string list_catalog();

}  // namespace crfolio
