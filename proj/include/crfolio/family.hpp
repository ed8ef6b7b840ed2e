#pragma once

// Parametrized families of analytic discs G(zeta, t) = g_t(zeta), stored as
// per-node Taylor data of g_t, with regularity audits and the
// closure-intersection test.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "crfolio/interp.hpp"
#include "crfolio/poly.hpp"

namespace crfolio {

enum class ParamKind { Circle, Interval, Box3 };

// Parameter manifold chart. Circle is the periodic angle [0, 2*pi);
// Interval is [0, 1] with both endpoints; Box3 is a 3-axis chart [0, 1]^3
// with `resolution` nodes per axis.
struct ParamSpace {
  ParamKind kind = ParamKind::Circle;
  int resolution = 0;

  ParamSpace() = default;
  ParamSpace(ParamKind k, int res);

  int node_count() const;
  // scalar coordinate of node i (Circle / Interval)
  double node(int i) const;
  std::array<double, 3> node3(int i) const;
  int index3(int i, int j, int k) const;
  // spacing between adjacent nodes along one axis
  double mesh() const;
  bool scalar() const { return kind != ParamKind::Box3; }
};

// A complex-valued function on closed-disc x parameter domain that is a
// polynomial in zeta at every parameter node. Continuous-in-t evaluation is
// available for scalar parameter spaces (trigonometric interpolation of the
// coefficients on Circle, cubic splines on Interval); Box3 fields are
// evaluated at nodes with finite-difference t-derivatives.
class CoeffField {
 public:
  CoeffField() = default;
  CoeffField(ParamSpace ps, std::vector<Poly> per_node);

  const ParamSpace& params() const { return params_; }
  const Poly& at_node(int i) const { return nodes_[i]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int coeff_count() const { return ncoeff_; }
  double coeff_scale() const { return scale_; }

  cx value_node(cx zeta, int node) const;
  cx dzeta_node(cx zeta, int node) const;
  cx dpsi_node(cx zeta, int node) const;  // i zeta d/dzeta

  // scalar parameter spaces only
  cx value(cx zeta, double t) const;
  cx dzeta(cx zeta, double t) const;
  cx dt(cx zeta, double t) const;
  // coefficient-level parameter derivative at a node: spectral on Circle,
  // 4th-order finite differences on Interval (one-sided at the endpoints)
  const Poly& dt_poly_node(int node) const;

  // Box3: derivative along one chart axis at a node; analytic tables when
  // the builder supplied them, 4th-order finite differences otherwise
  Poly dt_poly_node_axis(int node, int axis) const;

  // builders with closed-form parameter derivatives install them here
  void set_exact_axis_derivatives(std::array<std::vector<Poly>, 3> tables);

 private:
  ParamSpace params_;
  std::vector<Poly> nodes_;
  std::vector<ParamInterp> interp_;  // per coefficient index (scalar spaces)
  std::vector<Poly> dt_nodes_;
  std::array<std::vector<Poly>, 3> exact_dt_;  // Box3, optional
  bool has_exact_dt_ = false;
  int ncoeff_ = 0;
  double scale_ = 0.0;
};

struct DiscFamily {
  int ambient_dim = 1;  // the paper-style n: 1 or 2
  ParamSpace params;
  std::vector<CoeffField> comp;  // one coefficient field per ambient component
  std::string builder;
  std::string builder_params;  // human-readable echo of the builder inputs

  // n = 1 conveniences
  cx eval(cx zeta, double t) const { return comp[0].value(zeta, t); }
  cx d_zeta(cx zeta, double t) const { return comp[0].dzeta(zeta, t); }
  cx d_t(cx zeta, double t) const { return comp[0].dt(zeta, t); }

  std::vector<cx> eval_node(cx zeta, int node) const;
  double coeff_scale() const;
};

DiscFamily build_rotating_circles(double R, double r, int resolution);
DiscFamily build_translated_circles(double rho,
                                    const std::vector<cx>& center_path,
                                    int resolution);
// taylor_table[node][component] = Taylor coefficients of g_t
DiscFamily build_custom(const std::vector<std::vector<Poly>>& taylor_table,
                        ParamSpace params, int ambient_dim);
DiscFamily build_tangent_lines(double ball_radius, double inner_radius,
                               int resolution);
DiscFamily build_hopf_discs(int resolution);

// Tangency data used by build_tangent_lines at a single inner-sphere point.
struct TangentDisc {
  std::array<cx, 2> p;  // tangency point, |p| = inner radius
  std::array<cx, 2> v;  // unit complex-tangent direction
  double rho;           // disc radius, sqrt(ball^2 - inner^2)
};
TangentDisc tangent_line_disc(double ball_radius, const std::array<cx, 2>& p);

// det of the real boundary differential written as the complex determinant
// d_t G conj(d_psi G) - d_psi G conj(d_t G); purely imaginary. For the
// rotating family this equals 2 i R r sin(t - psi).
cx boundary_jacobian(const DiscFamily& family, double psi, double t);

struct RegularityReport {
  bool interior_rank_ok = false;
  // sampled bSigma points with full rank k, rank k-1 and rank < k-1
  std::array<long, 3> boundary_rank_histogram{0, 0, 0};
  bool critical_on_boundary = false;
  double min_interior_jacobian = 0.0;
  long samples_interior = 0;
  long samples_boundary = 0;
};
RegularityReport regularity_audit(const DiscFamily& family);

struct IntersectionResult {
  bool empty = false;
  cx witness{0.0};     // a common point when not empty
  double cell = 0.0;   // raster cell size the decision is certified at
};
// Grid-certified test whether the closed discs have no common point (n=1).
IntersectionResult closure_intersection_empty(const DiscFamily& family,
                                              int raster = 512);

// Membership of b in the closed disc D_t (winding test on the boundary).
bool disc_contains(const DiscFamily& family, int node, cx b);

}  // namespace crfolio
