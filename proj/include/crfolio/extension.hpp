#pragma once

// Per-disc holomorphic extension of a boundary function: circle-spectrum
// analysis of psi -> f(g_t(e^{i psi})), the extension field F(zeta, t), and
// the moment criterion.

#include <vector>

#include "crfolio/catalog.hpp"
#include "crfolio/family.hpp"

namespace crfolio {

struct ExtensionField {
  DiscFamily family;
  int circle_n = 0;                // boundary samples per disc
  CoeffField field;                // nonnegative spectrum as Taylor data
  std::vector<double> residual_t;  // l2 norm of the negative spectrum
  double residual = 0.0;           // max over t
  double boundary_rms = 0.0;       // RMS of all boundary samples
  double tolerance = 0.0;          // extendibility cut: 1e-8 * boundary_rms

  bool extendible() const { return residual <= tolerance; }
};

ExtensionField analyze(const BoundaryFunction& f, const DiscFamily& family,
                       int circle_n = 256);

// F and its derivatives; throws when the extension residual is above the
// tolerance ("no extension").  Scalar parameter spaces only for the
// continuous-in-t forms.
cx eval_extension(const ExtensionField& ext, cx zeta, double t);
cx eval_extension_dzeta(const ExtensionField& ext, cx zeta, double t);
cx eval_extension_dt(const ExtensionField& ext, cx zeta, double t);

// max |contour integral of f * omega| over parameter nodes and monomial
// holomorphic 1-forms omega = z^alpha dz_j with |alpha| <= max_power
double moment_test(const BoundaryFunction& f, const DiscFamily& family,
                   int max_power, int circle_n = 256);

}  // namespace crfolio
