#pragma once

// The two-dimensional ambient layer: 3x3 Jacobi minors, reality of the
// Cramer factors K_mu, and tangential CR residuals on a hypersurface.

#include <array>
#include <vector>

#include "crfolio/catalog.hpp"
#include "crfolio/extension.hpp"

namespace crfolio {

struct MinorField {
  // samples[k][s]: minor k at sample s; k = 0 omits the d_psi row,
  // k = 1..3 omit the d_t1 / d_t2 / d_t3 row
  std::array<std::vector<cx>, 4> samples;
  std::array<double, 4> scale{};   // RMS per minor
  std::vector<cx> zeta_of_sample;  // sample positions, for diagnostics
  std::vector<int> node_of_sample;
  double center_max = 0.0;  // max |J^k(0, t)| over k = 1..3 and nodes
};

MinorField compute_minors(const ExtensionField& ext);

// true iff "J^1..J^3 all small" implies "J^0 small" on the sampled grid
bool lemma34_check(const MinorField& minors);

struct KRealityReport {
  double max_rel_imag = 0.0;  // max |Im K_mu| / |K_mu| over samples
  double max_incidence = 0.0; // max |rho(G)| on boundary circles
  long samples = 0;
};

KRealityReport k_mu_reality(const DiscFamily& family,
                            const Hypersurface& surface);

// max |dbar_1 rho * dbar_2 f - dbar_2 rho * dbar_1 f| over the samples,
// derivatives of f by central finite differences
double tangential_cr_residual(const BoundaryFunction& f,
                              const Hypersurface& surface,
                              const std::vector<std::array<cx, 2>>& samples);

}  // namespace crfolio
