#include "crfolio/family.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "crfolio/core.hpp"

namespace crfolio {

ParamSpace::ParamSpace(ParamKind k, int res) : kind(k), resolution(res) {
  if (res < 4) throw ConfigError("parameter resolution must be at least 4");
  if (k == ParamKind::Circle && res % 2 != 0)
    throw ConfigError("circle parameter resolution must be even");
}

int ParamSpace::node_count() const {
  if (kind == ParamKind::Box3) return resolution * resolution * resolution;
  return resolution;
}

double ParamSpace::node(int i) const {
  if (kind == ParamKind::Circle) return kTwoPi * i / resolution;
  if (kind == ParamKind::Interval) return double(i) / (resolution - 1);
  throw DomainError("scalar node coordinate requested on a Box3 space");
}

std::array<double, 3> ParamSpace::node3(int i) const {
  if (kind != ParamKind::Box3)
    throw DomainError("node3 requested on a scalar parameter space");
  const int r = resolution;
  const int a = i / (r * r), b = (i / r) % r, c = i % r;
  const double h = 1.0 / (r - 1);
  return {a * h, b * h, c * h};
}

int ParamSpace::index3(int i, int j, int k) const {
  return (i * resolution + j) * resolution + k;
}

double ParamSpace::mesh() const {
  if (kind == ParamKind::Circle) return kTwoPi / resolution;
  return 1.0 / (resolution - 1);
}

CoeffField::CoeffField(ParamSpace ps, std::vector<Poly> per_node)
    : params_(ps), nodes_(std::move(per_node)) {
  if (static_cast<int>(nodes_.size()) != params_.node_count())
    throw ConfigError("coefficient table size does not match parameter space");
  for (const auto& p : nodes_)
    ncoeff_ = std::max(ncoeff_, static_cast<int>(p.size()));
  if (ncoeff_ == 0) throw ConfigError("empty Taylor data");
  for (auto& p : nodes_) {
    p.resize(ncoeff_, cx(0.0));
    for (const cx& c : p) scale_ = std::max(scale_, std::abs(c));
  }

  if (params_.scalar()) {
    const int n = params_.node_count();
    interp_.reserve(ncoeff_);
    for (int k = 0; k < ncoeff_; ++k) {
      std::vector<cx> vals(n);
      for (int i = 0; i < n; ++i) vals[i] = nodes_[i][k];
      interp_.push_back(params_.kind == ParamKind::Circle
                            ? ParamInterp::periodic(vals)
                            : ParamInterp::spline(vals));
    }
    dt_nodes_.assign(n, Poly(ncoeff_));
    if (params_.kind == ParamKind::Circle) {
      for (int k = 0; k < ncoeff_; ++k)
        for (int i = 0; i < n; ++i)
          dt_nodes_[i][k] = interp_[k].deriv(params_.node(i));
    } else {
      for (int k = 0; k < ncoeff_; ++k) {
        std::vector<cx> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = nodes_[i][k];
        auto d = fd4_derivative(vals, params_.mesh(), false);
        for (int i = 0; i < n; ++i) dt_nodes_[i][k] = d[i];
      }
    }
  }
}

cx CoeffField::value_node(cx zeta, int node) const {
  return peval(nodes_[node], zeta);
}

cx CoeffField::dzeta_node(cx zeta, int node) const {
  return peval(pderiv(nodes_[node]), zeta);
}

cx CoeffField::dpsi_node(cx zeta, int node) const {
  return cx(0.0, 1.0) * zeta * dzeta_node(zeta, node);
}

cx CoeffField::value(cx zeta, double t) const {
  if (!params_.scalar())
    throw DomainError("continuous parameter evaluation needs a scalar space");
  cx acc(0.0);
  for (int k = ncoeff_ - 1; k >= 0; --k) acc = acc * zeta + interp_[k].value(t);
  return acc;
}

cx CoeffField::dzeta(cx zeta, double t) const {
  cx acc(0.0);
  for (int k = ncoeff_ - 1; k >= 1; --k)
    acc = acc * zeta + double(k) * interp_[k].value(t);
  return acc;
}

cx CoeffField::dt(cx zeta, double t) const {
  cx acc(0.0);
  for (int k = ncoeff_ - 1; k >= 0; --k) acc = acc * zeta + interp_[k].deriv(t);
  return acc;
}

const Poly& CoeffField::dt_poly_node(int node) const {
  if (dt_nodes_.empty())
    throw DomainError("scalar parameter derivative requested on a Box3 space");
  return dt_nodes_[node];
}

void CoeffField::set_exact_axis_derivatives(
    std::array<std::vector<Poly>, 3> tables) {
  if (params_.kind != ParamKind::Box3)
    throw DomainError("exact axis derivatives only apply to Box3 spaces");
  for (auto& tab : tables) {
    if ((int)tab.size() != params_.node_count())
      throw ConfigError("derivative table size does not match the space");
    for (auto& p : tab) p.resize(ncoeff_, cx(0.0));
  }
  exact_dt_ = std::move(tables);
  has_exact_dt_ = true;
}

Poly CoeffField::dt_poly_node_axis(int node, int axis) const {
  if (params_.kind != ParamKind::Box3)
    throw DomainError("axis derivative only defined on Box3 spaces");
  if (has_exact_dt_) return exact_dt_[axis][node];
  const int r = params_.resolution;
  const int a = node / (r * r), b = (node / r) % r, c = node % r;
  int pos = axis == 0 ? a : (axis == 1 ? b : c);
  auto at = [&](int q) -> const Poly& {
    int i = axis == 0 ? q : a, j = axis == 1 ? q : b, k = axis == 2 ? q : c;
    return nodes_[params_.index3(i, j, k)];
  };
  const double h = params_.mesh();
  Poly out(ncoeff_);
  for (int m = 0; m < ncoeff_; ++m) {
    std::vector<cx> line(r);
    for (int q = 0; q < r; ++q) line[q] = at(q)[m];
    // reuse the full-line stencil; cost is negligible for audit sampling
    out[m] = fd4_derivative(line, h, false)[pos];
  }
  return out;
}

std::vector<cx> DiscFamily::eval_node(cx zeta, int node) const {
  std::vector<cx> out(comp.size());
  for (size_t c = 0; c < comp.size(); ++c)
    out[c] = comp[c].value_node(zeta, node);
  return out;
}

double DiscFamily::coeff_scale() const {
  double s = 0.0;
  for (const auto& c : comp) s = std::max(s, c.coeff_scale());
  return s;
}

DiscFamily build_rotating_circles(double R, double r, int resolution) {
  if (r <= 0.0) throw ConfigError("circle radius r must be positive");
  if (R < 0.0) throw ConfigError("center radius R must be nonnegative");
  ParamSpace ps(ParamKind::Circle, resolution);
  std::vector<Poly> table(ps.node_count());
  for (int i = 0; i < ps.node_count(); ++i) {
    double t = ps.node(i);
    table[i] = {R * std::polar(1.0, t), cx(r)};
  }
  DiscFamily fam;
  fam.ambient_dim = 1;
  fam.params = ps;
  fam.comp = {CoeffField(ps, std::move(table))};
  fam.builder = "rotating_circles";
  std::ostringstream os;
  os << "R=" << R << " r=" << r << " resolution=" << resolution;
  fam.builder_params = os.str();
  return fam;
}

DiscFamily build_translated_circles(double rho,
                                    const std::vector<cx>& center_path,
                                    int resolution) {
  if (rho <= 0.0) throw ConfigError("disc radius must be positive");
  if (center_path.size() < 2)
    throw ConfigError("center path needs at least two waypoints");
  ParamSpace ps(ParamKind::Interval, resolution);
  // spline through the waypoints, then resample at the parameter nodes
  ParamInterp path = ParamInterp::spline(center_path);
  std::vector<Poly> table(ps.node_count());
  for (int i = 0; i < ps.node_count(); ++i)
    table[i] = {path.value(ps.node(i)), cx(rho)};
  DiscFamily fam;
  fam.ambient_dim = 1;
  fam.params = ps;
  fam.comp = {CoeffField(ps, std::move(table))};
  fam.builder = "translated_circles";
  std::ostringstream os;
  os << "rho=" << rho << " waypoints=" << center_path.size()
     << " resolution=" << resolution;
  fam.builder_params = os.str();
  return fam;
}

DiscFamily build_custom(const std::vector<std::vector<Poly>>& taylor_table,
                        ParamSpace params, int ambient_dim) {
  if (ambient_dim != 1 && ambient_dim != 2)
    throw ConfigError("ambient dimension must be 1 or 2");
  if (static_cast<int>(taylor_table.size()) != params.node_count())
    throw ConfigError("Taylor table size does not match parameter space");
  std::vector<std::vector<Poly>> per_comp(ambient_dim);
  for (int c = 0; c < ambient_dim; ++c) {
    per_comp[c].reserve(taylor_table.size());
    for (const auto& row : taylor_table) {
      if (static_cast<int>(row.size()) != ambient_dim)
        throw ConfigError("Taylor table row has wrong component count");
      per_comp[c].push_back(row[c]);
    }
  }
  DiscFamily fam;
  fam.ambient_dim = ambient_dim;
  fam.params = params;
  for (int c = 0; c < ambient_dim; ++c)
    fam.comp.emplace_back(params, std::move(per_comp[c]));
  fam.builder = "custom";
  std::ostringstream os;
  os << "nodes=" << params.node_count() << " ambient_dim=" << ambient_dim;
  fam.builder_params = os.str();

  // each disc must be immersed: d_zeta g nonvanishing on a closed-disc grid
  const double tol = 1e-10 * std::max(fam.coeff_scale(), 1.0);
  for (int node = 0; node < params.node_count(); ++node) {
    for (int ir = 0; ir <= 8; ++ir) {
      double rad = ir / 8.0;
      for (int ia = 0; ia < 24; ++ia) {
        cx zeta = std::polar(rad, kTwoPi * ia / 24.0);
        double mag = 0.0;
        for (int c = 0; c < ambient_dim; ++c)
          mag += std::abs(fam.comp[c].dzeta_node(zeta, node));
        if (mag < tol)
          throw DomainError("custom family has a non-immersed disc");
      }
    }
  }
  return fam;
}

TangentDisc tangent_line_disc(double ball_radius, const std::array<cx, 2>& p) {
  double s = std::sqrt(std::norm(p[0]) + std::norm(p[1]));
  if (s <= 0.0 || s >= ball_radius)
    throw ConfigError("tangency point must satisfy 0 < |p| < ball radius");
  TangentDisc d;
  d.p = p;
  d.v = {-std::conj(p[1]) / s, std::conj(p[0]) / s};
  d.rho = std::sqrt(ball_radius * ball_radius - s * s);
  return d;
}

DiscFamily build_tangent_lines(double ball_radius, double inner_radius,
                               int resolution) {
  if (!(0.0 < inner_radius && inner_radius < ball_radius))
    throw ConfigError("need 0 < inner radius < ball radius");
  ParamSpace ps(ParamKind::Box3, resolution);
  const double s = inner_radius;
  std::vector<Poly> t0(ps.node_count()), t1(ps.node_count());
  std::array<std::vector<Poly>, 3> d0, d1;
  for (auto& v : d0) v.resize(ps.node_count());
  for (auto& v : d1) v.resize(ps.node_count());
  for (int i = 0; i < ps.node_count(); ++i) {
    auto u = ps.node3(i);
    // torus-style chart of the inner sphere: colatitude plus two phases
    double theta = u[0] * (kPi / 2);
    double phi1 = u[1] * kTwoPi, phi2 = u[2] * kTwoPi;
    cx e1 = std::polar(1.0, phi1), e2 = std::polar(1.0, phi2);
    std::array<cx, 2> p = {s * std::cos(theta) * e1, s * std::sin(theta) * e2};
    TangentDisc d = tangent_line_disc(ball_radius, p);
    t0[i] = {d.p[0], d.rho * d.v[0]};
    t1[i] = {d.p[1], d.rho * d.v[1]};
    // closed-form chart derivatives of p; v = (-conj(p2), conj(p1)) / s
    std::array<std::array<cx, 2>, 3> dp;
    dp[0] = {-s * std::sin(theta) * e1 * (kPi / 2),
             s * std::cos(theta) * e2 * (kPi / 2)};
    dp[1] = {s * std::cos(theta) * cx(0, kTwoPi) * e1, cx(0.0)};
    dp[2] = {cx(0.0), s * std::sin(theta) * cx(0, kTwoPi) * e2};
    for (int ax = 0; ax < 3; ++ax) {
      cx dv0 = -std::conj(dp[ax][1]) / s, dv1 = std::conj(dp[ax][0]) / s;
      d0[ax][i] = {dp[ax][0], d.rho * dv0};
      d1[ax][i] = {dp[ax][1], d.rho * dv1};
    }
  }
  DiscFamily fam;
  fam.ambient_dim = 2;
  fam.params = ps;
  fam.comp = {CoeffField(ps, std::move(t0)), CoeffField(ps, std::move(t1))};
  fam.comp[0].set_exact_axis_derivatives(std::move(d0));
  fam.comp[1].set_exact_axis_derivatives(std::move(d1));
  fam.builder = "tangent_lines";
  std::ostringstream os;
  os << "ball_radius=" << ball_radius << " inner_radius=" << inner_radius
     << " resolution=" << resolution;
  fam.builder_params = os.str();
  return fam;
}

DiscFamily build_hopf_discs(int resolution) {
  ParamSpace ps(ParamKind::Box3, resolution);
  std::vector<Poly> t0(ps.node_count()), t1(ps.node_count());
  std::array<std::vector<Poly>, 3> d0, d1;
  for (auto& v : d0) v.resize(ps.node_count());
  for (auto& v : d1) v.resize(ps.node_count());
  for (int i = 0; i < ps.node_count(); ++i) {
    auto u = ps.node3(i);
    // affine chart of the fiber space: w in [-1,1]^2, plus a phase axis
    cx w(2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0);
    double a = 1.0 / std::sqrt(1.0 + std::norm(w));
    cx phase = std::polar(1.0, kTwoPi * u[2]);
    t0[i] = {cx(0.0), phase * a};
    t1[i] = {cx(0.0), phase * a * w};
    // chart derivatives: dw/du1 = 2, dw/du2 = 2i, and the phase axis
    const cx dw[2] = {cx(2.0), cx(0.0, 2.0)};
    for (int ax = 0; ax < 2; ++ax) {
      double da = -a * a * a * (std::conj(w) * dw[ax]).real();
      d0[ax][i] = {cx(0.0), phase * da};
      d1[ax][i] = {cx(0.0), phase * (da * w + a * dw[ax])};
    }
    d0[2][i] = {cx(0.0), cx(0, kTwoPi) * phase * a};
    d1[2][i] = {cx(0.0), cx(0, kTwoPi) * phase * a * w};
  }
  DiscFamily fam;
  fam.ambient_dim = 2;
  fam.params = ps;
  fam.comp = {CoeffField(ps, std::move(t0)), CoeffField(ps, std::move(t1))};
  fam.comp[0].set_exact_axis_derivatives(std::move(d0));
  fam.comp[1].set_exact_axis_derivatives(std::move(d1));
  fam.builder = "hopf_discs";
  std::ostringstream os;
  os << "resolution=" << resolution;
  fam.builder_params = os.str();
  return fam;
}

cx boundary_jacobian(const DiscFamily& family, double psi, double t) {
  if (family.ambient_dim != 1)
    throw DomainError("boundary_jacobian is defined for planar families");
  cx zeta = std::polar(1.0, psi);
  cx dpsi = cx(0.0, 1.0) * zeta * family.d_zeta(zeta, t);
  cx dt = family.d_t(zeta, t);
  return dt * std::conj(dpsi) - dpsi * std::conj(dt);
}

namespace {

// real Jacobian columns of the boundary restriction at (psi, node)
Eigen::MatrixXd boundary_real_jacobian(const DiscFamily& fam, double psi,
                                       int node) {
  const int n = fam.ambient_dim;
  const int mdim = fam.params.scalar() ? 1 : 3;
  cx zeta = std::polar(1.0, psi);
  Eigen::MatrixXd M(2 * n, 1 + mdim);
  for (int c = 0; c < n; ++c) {
    cx dpsi = fam.comp[c].dpsi_node(zeta, node);
    M(2 * c, 0) = dpsi.real();
    M(2 * c + 1, 0) = dpsi.imag();
    for (int ax = 0; ax < mdim; ++ax) {
      cx dt = fam.params.scalar()
                  ? peval(fam.comp[c].dt_poly_node(node), zeta)
                  : peval(fam.comp[c].dt_poly_node_axis(node, ax), zeta);
      M(2 * c, 1 + ax) = dt.real();
      M(2 * c + 1, 1 + ax) = dt.imag();
    }
  }
  return M;
}

}  // namespace

RegularityReport regularity_audit(const DiscFamily& family) {
  RegularityReport rep;
  const int nodes = family.params.node_count();
  // cap the audit cost on large Box3 spaces
  int stride = std::max(1, nodes / 512);
  double scale = std::max(family.coeff_scale(), 1.0);

  double min_jac = 1e300;
  bool interior_ok = true;
  for (int node = 0; node < nodes; node += stride) {
    for (int ir = 0; ir <= 6; ++ir) {
      double rad = 0.99 * ir / 6.0;
      for (int ia = 0; ia < 16; ++ia) {
        cx zeta = std::polar(rad, kTwoPi * ia / 16.0);
        double mag = 0.0;
        for (int c = 0; c < family.ambient_dim; ++c)
          mag += std::abs(family.comp[c].dzeta_node(zeta, node));
        min_jac = std::min(min_jac, mag);
        if (mag < 1e-10 * scale) interior_ok = false;
        ++rep.samples_interior;
      }
    }
  }
  rep.min_interior_jacobian = min_jac;
  rep.interior_rank_ok = interior_ok;

  const int full = family.params.scalar() ? 2 : 4;
  const int npsi = 32;
  std::vector<cx> deficient_images;
  for (int node = 0; node < nodes; node += stride) {
    for (int ia = 0; ia < npsi; ++ia) {
      double psi = kTwoPi * ia / npsi;
      Eigen::MatrixXd M = boundary_real_jacobian(family, psi, node);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
      auto sv = svd.singularValues();
      double top = std::max(sv(0), 1e-300);
      int rank = 0;
      for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > 1e-8 * std::max(top, scale)) ++rank;
      if (rank >= full)
        ++rep.boundary_rank_histogram[0];
      else if (rank == full - 1)
        ++rep.boundary_rank_histogram[1];
      else
        ++rep.boundary_rank_histogram[2];
      if (rank < full && family.ambient_dim == 1)
        deficient_images.push_back(
            family.comp[0].value_node(std::polar(1.0, psi), node));
      ++rep.samples_boundary;
    }
  }

  // do the sampled critical values land on the edge of the swept region?
  // (planar families only; decided against a raster of the boundary-torus
  // image)
  if (family.ambient_dim == 1 && !deficient_images.empty()) {
    const int raster = 256;
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    std::vector<cx> pts;
    for (int node = 0; node < nodes; ++node)
      for (int ia = 0; ia < 64; ++ia) {
        cx z = family.comp[0].value_node(std::polar(1.0, kTwoPi * ia / 64.0),
                                         node);
        pts.push_back(z);
        lo_x = std::min(lo_x, z.real());
        hi_x = std::max(hi_x, z.real());
        lo_y = std::min(lo_y, z.imag());
        hi_y = std::max(hi_y, z.imag());
      }
    double cell = std::max(hi_x - lo_x, hi_y - lo_y) / raster;
    cell = std::max(cell, 1e-12);
    auto idx = [&](cx z, int& i, int& j) {
      i = int((z.real() - lo_x) / cell);
      j = int((z.imag() - lo_y) / cell);
    };
    std::vector<char> mask((raster + 2) * (raster + 2), 0);
    auto at = [&](int i, int j) -> char& {
      i = std::clamp(i, 0, raster + 1);
      j = std::clamp(j, 0, raster + 1);
      return mask[size_t(j) * (raster + 2) + i];
    };
    for (cx z : pts) {
      int i, j;
      idx(z, i, j);
      at(i, j) = 1;
    }
    bool all_on_edge = true;
    for (cx z : deficient_images) {
      int i, j;
      idx(z, i, j);
      bool near_edge = false;
      for (int dj = -2; dj <= 2 && !near_edge; ++dj)
        for (int di = -2; di <= 2 && !near_edge; ++di) {
          int ii = i + di, jj = j + dj;
          bool edge = at(ii, jj) && (!at(ii - 1, jj) || !at(ii + 1, jj) ||
                                     !at(ii, jj - 1) || !at(ii, jj + 1));
          if (edge) near_edge = true;
        }
      if (!near_edge) all_on_edge = false;
    }
    rep.critical_on_boundary = all_on_edge;
  }
  return rep;
}

bool disc_contains(const DiscFamily& family, int node, cx b) {
  const Poly& p = family.comp[0].at_node(node);
  cx c0 = p.empty() ? cx(0.0) : p[0];
  double outer = 0.0, tail = 0.0;
  for (size_t k = 1; k < p.size(); ++k) outer += std::abs(p[k]);
  for (size_t k = 2; k < p.size(); ++k) tail += std::abs(p[k]);
  double d = std::abs(b - c0);
  if (d > outer + 1e-12) return false;
  double inner = (p.size() > 1 ? std::abs(p[1]) : 0.0) - tail;
  if (d < inner - 1e-12) return true;
  // winding of the boundary curve around b
  const int m = 256;
  double total = 0.0;
  cx prev = peval(p, cx(1.0)) - b;
  double mindist = std::abs(prev);
  for (int i = 1; i <= m; ++i) {
    cx cur = peval(p, std::polar(1.0, kTwoPi * i / m)) - b;
    mindist = std::min(mindist, std::abs(cur));
    total += std::arg(cur / prev);
    prev = cur;
  }
  if (mindist < 1e-9 * std::max(family.coeff_scale(), 1.0))
    return true;  // on the closed boundary
  return std::lround(total / kTwoPi) != 0;
}

IntersectionResult closure_intersection_empty(const DiscFamily& family,
                                              int raster) {
  if (family.ambient_dim != 1)
    throw DomainError("closure intersection test is for planar families");
  if (raster < 16) throw ConfigError("raster resolution too small");
  const Poly& p0 = family.comp[0].at_node(0);
  cx c0 = p0.empty() ? cx(0.0) : p0[0];
  double r0 = 0.0;
  for (size_t k = 1; k < p0.size(); ++k) r0 += std::abs(p0[k]);
  double lo_x = c0.real() - r0, lo_y = c0.imag() - r0;
  double cell = 2.0 * r0 / raster;

  IntersectionResult res;
  res.cell = cell;
  std::vector<cx> live;
  live.reserve(size_t(raster) * raster / 2);
  for (int j = 0; j < raster; ++j)
    for (int i = 0; i < raster; ++i) {
      cx b(lo_x + (i + 0.5) * cell, lo_y + (j + 0.5) * cell);
      if (std::abs(b - c0) <= r0) live.push_back(b);
    }
  for (int node = 0; node < family.params.node_count() && !live.empty();
       ++node) {
    std::vector<cx> next;
    next.reserve(live.size());
    for (cx b : live)
      if (disc_contains(family, node, b)) next.push_back(b);
    live.swap(next);
  }
  if (live.empty()) {
    res.empty = true;
    return res;
  }
  cx centroid(0.0);
  for (cx b : live) centroid += b;
  centroid /= double(live.size());
  cx best = live[0];
  for (cx b : live)
    if (std::abs(b - centroid) < std::abs(best - centroid)) best = b;
  res.empty = false;
  res.witness = best;
  return res;
}

}  // namespace crfolio
