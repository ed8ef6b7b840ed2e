#pragma once

// The planar Jacobian field J = i zeta (d_zeta F d_t G - d_zeta G d_t F),
// its boundary forms J_plus / J_minus, the phase field Theta = J / conj(J),
// and zero-chain tracking across the parameter.

#include <functional>
#include <vector>

#include "crfolio/extension.hpp"

namespace crfolio {

struct JacobianField {
  DiscFamily family;
  CoeffField field;   // per-node Taylor data of zeta -> J(zeta, t)
  double scale = 0.0; // RMS magnitude over a polar x parameter grid
};

JacobianField compute_J(const ExtensionField& ext);

// J with prescribed per-node Taylor data, for synthetic experiments
JacobianField synthetic_J(const DiscFamily& family,
                          const std::function<Poly(double t)>& taylor_of_t);

struct BoundaryJacobians {
  int circle_n = 0;
  // [node][psi index]
  std::vector<std::vector<cx>> j_plus;   // d_psi F d_t conj(G) - d_t F d_psi conj(G)
  std::vector<std::vector<cx>> j_minus;  // d_psi F d_t G - d_t F d_psi G
};

// Boundary Cramer forms built from F = f o G on the boundary torus alone
// (no extension needed).
BoundaryJacobians compute_J_pm(const BoundaryFunction& f,
                               const DiscFamily& family, int circle_n = 256);

struct ThetaField {
  int circle_n = 0;
  std::vector<std::vector<cx>> theta;   // [node][psi], valid where unmasked
  std::vector<std::vector<char>> mask;  // 1 = |J| too small, Theta suppressed
  double compatibility_residual = 0.0;  // max |Theta(u1)-Theta(u2)| on pairs
                                        // with G(u1) ~ G(u2)
  long pairs_compared = 0;
  // max |Theta - sigma o G| with sigma = -dzbar f / conj(dzbar f), when a
  // symbolic derivative is available (negative when not computed)
  double sigma_residual = -1.0;
  bool degenerate = false;  // J identically zero: Theta undefined
};

ThetaField theta_field(const JacobianField& J, int circle_n = 256,
                       const BoundaryFunction* f = nullptr);

struct ZeroBranch {
  std::vector<int> nodes;
  std::vector<cx> zeta;
  double kappa = 1.0;  // half-integer multiplicity
  bool closed = false; // wraps around on Circle parameter spaces
  bool on_boundary = false;
};

struct ZeroChain {
  std::vector<ZeroBranch> branches;
  std::vector<int> zero_disc_nodes;  // J(., t) below threshold, excised
  bool central_cycle_present = false;
};

ZeroChain track_zeros(const JacobianField& J);

struct Fiber;  // topology module

// max over fiber samples of |J + i zeta d_zeta G * dF/dt along the fiber|
double directional_derivative_check(const ExtensionField& ext,
                                    const JacobianField& J,
                                    const std::vector<Fiber>& fibers);

}  // namespace crfolio
