#pragma once

// Theorem-level engines: the symmetry relation between chain windings and
// fiber phase variation, jump counting along planar paths, the end-to-end
// verdict pipeline, and the counterexample suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crfolio/jacobian.hpp"
#include "crfolio/topology.hpp"

namespace crfolio {

struct SymmetryReport {
  cx b;
  double lhs = 0.0;      // 2 * sum_j kappa_j * winding(G(C_j) - b)
  double rhs = 0.0;      // phase variation of Theta along the fiber / 2 pi
  double abs_gap = 0.0;
  bool admissible = false;  // fiber stays clear of the zero chains
  int fiber_components = 0;
};

SymmetryReport symmetry_relation(const JacobianField& J,
                                 const ZeroChain& chain,
                                 const DiscFamily& family, cx b);

struct JumpProfile {
  std::vector<cx> probes;
  std::vector<char> admissible;
  std::vector<cx> chi;  // (1/pi i) sum_j kappa_j \int_{G(C_j)} dz/(z-b)
  std::vector<double> Z;  // phase variation of Theta along the open fiber
  std::vector<cx> N;      // chi - Z
  struct Event {
    int segment;           // probe interval the crossing falls in
    double signed_kappa;   // total signed chain multiplicity crossed
  };
  std::vector<Event> jump_events;
};

JumpProfile jump_profile(const JacobianField& J, const ZeroChain& chain,
                         const DiscFamily& family,
                         const std::vector<cx>& path_vertices, int n_probes);

enum class Verdict {
  HolomorphicConfirmed,
  CrConfirmed,
  ConditionStarFails,
  PreconditionFails,
  NondegenerateWitness,
  Inconclusive,
};

const char* verdict_name(Verdict v);

struct VerdictReport {
  std::string builder;
  std::string builder_params;
  std::string function_name;
  int ambient_dim = 1;
  double extension_residual = -1.0;
  double extension_tolerance = -1.0;
  RegularityReport regularity;
  std::optional<HomologyVerdict> homology;
  bool condition_a = false;
  double j_max_rel = -1.0;       // max |J| over the reference scale
  double theta_compatibility = -1.0;
  double fiber_spread = -1.0;    // max variation of F along traced fibers
  double cr_residual = -1.0;     // finite-difference dbar residual of f
  std::vector<SymmetryReport> symmetry;  // witness diagnostics
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
};

struct VerdictOptions {
  int circle_n = 256;
  int fiber_probes = 20;
  std::uint64_t seed = 0;
};

VerdictReport run_verdict(const BoundaryFunction& f, const DiscFamily& family,
                          const VerdictOptions& opts = {});

struct SuiteAssertion {
  std::string name;
  bool pass = false;
  double value = 0.0;
};

struct SuiteReport {
  std::vector<SuiteAssertion> assertions;
  bool all_pass = false;
};

// The two end-to-end counterexamples: rotating circles with z^2/zbar, and
// the Hopf-foliation discs with |z1|^2.
SuiteReport counterexample_suite();

}  // namespace crfolio
