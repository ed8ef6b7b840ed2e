#pragma once

// Fibers G^{-1}(b), Brouwer degree of the boundary map, the zero-counting
// integral, and the planar homology condition test.

#include <optional>
#include <vector>

#include "crfolio/family.hpp"

namespace crfolio {

struct Fiber {
  cx b;
  std::vector<double> t;
  std::vector<cx> zeta;
  bool closed = false;        // returns to its start (Circle parameter)
  bool hit_boundary = false;  // |zeta| reached 1
};

// All connected components of the fiber over b, traced by a 4th-order
// predictor with Newton projection back to G = b at every step.  An empty
// result means b is missed by every disc.
std::vector<Fiber> trace_fiber(const DiscFamily& family, cx b);

// Signed preimage count of b under the boundary-torus map; Lemma-style
// expected value is 0 for admissible b.  When `signs` is given it receives
// the orientation sign of every preimage found.
int brouwer_degree(const DiscFamily& family, cx b,
                   std::vector<int>* signs = nullptr);

// number of solutions of G(., t) = b inside the open disc (argument
// principle), for scalar parameter spaces
int zero_count_integral(const DiscFamily& family, cx b, double t);

struct HomologyVerdict {
  bool condition_a = false;    // closed discs have empty intersection
  bool condition_iii = false;  // homological nontriviality (planar: = a)
  std::vector<cx> probes_used;
  std::vector<int> central_image_winding;  // per probe, Circle params only
  std::optional<cx> certifying_probe;      // nonzero winding witness
  cx common_point{0.0};                    // witness when condition_a fails
  bool cross_check_ok = false;
  double raster_cell = 0.0;
};

HomologyVerdict homology_test(const DiscFamily& family);

}  // namespace crfolio
