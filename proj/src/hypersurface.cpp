#include "crfolio/hypersurface.hpp"

#include <cmath>

namespace crfolio {

namespace {

cx det3(const cx m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

MinorField compute_minors(const ExtensionField& ext) {
  const DiscFamily& fam = ext.family;
  if (fam.ambient_dim != 2 || fam.params.kind != ParamKind::Box3)
    throw DomainError("minors are defined for Box3 two-dimensional families");
  if (!ext.extendible())
    throw DomainError("no extension: minor field unavailable");

  const int nodes = fam.params.node_count();
  const int stride = std::max(1, nodes / 512);
  MinorField out;

  // cache parameter-derivative polynomials per sampled node
  struct NodeDt {
    Poly g[2][3];
    Poly f[3];
  };
  std::vector<int> node_list;
  for (int node = 0; node < nodes; node += stride) node_list.push_back(node);
  std::vector<NodeDt> dt(node_list.size());
  for (size_t s = 0; s < node_list.size(); ++s)
    for (int ax = 0; ax < 3; ++ax) {
      dt[s].g[0][ax] = fam.comp[0].dt_poly_node_axis(node_list[s], ax);
      dt[s].g[1][ax] = fam.comp[1].dt_poly_node_axis(node_list[s], ax);
      dt[s].f[ax] = ext.field.dt_poly_node_axis(node_list[s], ax);
    }

  const double radii[3] = {0.0, 0.5, 1.0};
  std::array<double, 4> sumsq{};
  for (size_t s = 0; s < node_list.size(); ++s) {
    int node = node_list[s];
    for (double rad : radii)
      for (int ia = 0; ia < 8; ++ia) {
        cx zeta = std::polar(rad, kTwoPi * ia / 8.0);
        // rows d_psi, d_t1, d_t2, d_t3; columns G1, G2, F
        cx rows[4][3];
        rows[0][0] = fam.comp[0].dpsi_node(zeta, node);
        rows[0][1] = fam.comp[1].dpsi_node(zeta, node);
        rows[0][2] = cx(0, 1) * zeta * ext.field.dzeta_node(zeta, node);
        for (int ax = 0; ax < 3; ++ax) {
          rows[1 + ax][0] = peval(dt[s].g[0][ax], zeta);
          rows[1 + ax][1] = peval(dt[s].g[1][ax], zeta);
          rows[1 + ax][2] = peval(dt[s].f[ax], zeta);
        }
        for (int k = 0; k < 4; ++k) {
          cx m[3][3];
          int rr = 0;
          for (int r = 0; r < 4; ++r) {
            if (r == k) continue;
            for (int c = 0; c < 3; ++c) m[rr][c] = rows[r][c];
            ++rr;
          }
          cx v = det3(m);
          out.samples[k].push_back(v);
          sumsq[k] += std::norm(v);
        }
        out.zeta_of_sample.push_back(zeta);
        out.node_of_sample.push_back(node);
        if (std::abs(zeta) == 0.0)
          for (int k = 1; k < 4; ++k)
            out.center_max = std::max(
                out.center_max, std::abs(out.samples[k].back()));
      }
  }
  long count = (long)out.zeta_of_sample.size();
  for (int k = 0; k < 4; ++k)
    out.scale[k] = std::sqrt(sumsq[k] / std::max<long>(count, 1));
  return out;
}

bool lemma34_check(const MinorField& minors) {
  double s = 1e-300;
  for (double v : minors.scale) s = std::max(s, v);
  double max123 = 0.0, max0 = 0.0;
  for (int k = 1; k < 4; ++k)
    for (const cx& v : minors.samples[k])
      max123 = std::max(max123, std::abs(v));
  for (const cx& v : minors.samples[0]) max0 = std::max(max0, std::abs(v));
  if (max123 >= 1e-8 * s) return true;  // hypothesis not met: vacuous
  return max0 < 1e-6 * s;
}

KRealityReport k_mu_reality(const DiscFamily& family,
                            const Hypersurface& surface) {
  if (family.ambient_dim != 2 || family.params.kind != ParamKind::Box3)
    throw DomainError("K reality is defined for Box3 two-dimensional families");
  const int nodes = family.params.node_count();
  const int stride = std::max(1, nodes / 512);
  KRealityReport rep;

  // precondition: boundary circles lie on the surface
  for (int node = 0; node < nodes; node += stride)
    for (int ia = 0; ia < 16; ++ia) {
      cx zeta = std::polar(1.0, kTwoPi * ia / 16.0);
      std::array<cx, 2> z = {family.comp[0].value_node(zeta, node),
                             family.comp[1].value_node(zeta, node)};
      rep.max_incidence = std::max(rep.max_incidence, std::abs(surface.rho(z)));
    }
  if (rep.max_incidence > 1e-8)
    throw ConfigError(
        "family boundary circles do not lie on the surface (incidence " +
        std::to_string(rep.max_incidence) + ")");

  for (int node = 0; node < nodes; node += stride) {
    Poly dtg[2][3];
    for (int c = 0; c < 2; ++c)
      for (int ax = 0; ax < 3; ++ax)
        dtg[c][ax] = family.comp[c].dt_poly_node_axis(node, ax);
    for (int ia = 0; ia < 16; ++ia) {
      cx zeta = std::polar(1.0, kTwoPi * ia / 16.0);
      std::array<cx, 2> z = {family.comp[0].value_node(zeta, node),
                             family.comp[1].value_node(zeta, node)};
      // gradient rows d_psi, d_t1, d_t2 of G1, G2
      cx g[3][2];
      g[0][0] = family.comp[0].dpsi_node(zeta, node);
      g[0][1] = family.comp[1].dpsi_node(zeta, node);
      for (int ax = 0; ax < 2; ++ax) {
        g[1 + ax][0] = peval(dtg[0][ax], zeta);
        g[1 + ax][1] = peval(dtg[1][ax], zeta);
      }
      for (int mu = 0; mu < 2; ++mu) {
        cx denom = surface.dbar_rho(z, mu);
        if (std::abs(denom) <= 1e-6) continue;
        int nu = 1 - mu;  // the conjugate column that is kept
        cx m[3][3];
        for (int r = 0; r < 3; ++r) {
          m[r][0] = g[r][0];
          m[r][1] = g[r][1];
          m[r][2] = std::conj(g[r][nu]);
        }
        cx K = det3(m) / denom;
        double mag = std::abs(K);
        if (mag < 1e-12) continue;
        rep.max_rel_imag =
            std::max(rep.max_rel_imag, std::abs(K.imag()) / mag);
        ++rep.samples;
      }
    }
  }
  return rep;
}

double tangential_cr_residual(const BoundaryFunction& f,
                              const Hypersurface& surface,
                              const std::vector<std::array<cx, 2>>& samples) {
  if (f.arity != 2)
    throw ConfigError("tangential CR residual needs a two-variable function");
  double worst = 0.0;
  for (const auto& p : samples) {
    if (std::abs(surface.rho(p)) > 1e-6)
      throw DomainError("sample point is off the surface");
    std::vector<cx> z = {p[0], p[1]};
    // central finite differences for the Wirtinger derivatives
    const double h = 1e-5;
    cx dbar[2];
    for (int j = 0; j < 2; ++j) {
      std::vector<cx> a = z, b = z, c = z, d = z;
      a[j] += h;
      b[j] -= h;
      c[j] += cx(0, h);
      d[j] -= cx(0, h);
      cx fx = (f.value(a) - f.value(b)) / (2 * h);
      cx fy = (f.value(c) - f.value(d)) / (2 * h);
      dbar[j] = 0.5 * (fx + cx(0, 1) * fy);
    }
    cx res = surface.dbar_rho(p, 0) * dbar[1] - surface.dbar_rho(p, 1) * dbar[0];
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace crfolio
