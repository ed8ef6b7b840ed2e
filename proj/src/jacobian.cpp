#include "crfolio/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "crfolio/topology.hpp"

namespace crfolio {

namespace {

double grid_rms(const CoeffField& f) {
  double sumsq = 0.0;
  long count = 0;
  for (int node = 0; node < f.node_count(); ++node)
    for (int ir = 1; ir <= 8; ++ir)
      for (int ia = 0; ia < 16; ++ia) {
        cx zeta = std::polar(ir / 8.0, kTwoPi * ia / 16.0);
        sumsq += std::norm(f.value_node(zeta, node));
        ++count;
      }
  return std::sqrt(sumsq / count);
}

Poly psub(const Poly& a, const Poly& b) { return padd(a, pscale(b, cx(-1.0))); }

std::vector<cx> spectral_deriv_values(const std::vector<cx>& v) {
  CircleSamples cs(PeriodicGrid((int)v.size()), v);
  return inverse_transform(spectral_derivative(fourier_coeffs(cs))).values;
}

}  // namespace

JacobianField compute_J(const ExtensionField& ext) {
  if (ext.family.ambient_dim != 1)
    throw DomainError("compute_J is defined for planar families");
  if (!ext.extendible())
    throw DomainError("no extension: Jacobian field unavailable");
  const DiscFamily& fam = ext.family;
  const int nodes = fam.params.node_count();
  std::vector<Poly> table(nodes);
  for (int node = 0; node < nodes; ++node) {
    const Poly& F = ext.field.at_node(node);
    const Poly& G = fam.comp[0].at_node(node);
    const Poly& dtF = ext.field.dt_poly_node(node);
    const Poly& dtG = fam.comp[0].dt_poly_node(node);
    Poly core = psub(pmul(pderiv(F), dtG), pmul(pderiv(G), dtF));
    // i zeta prefactor makes the constant coefficient exactly zero
    table[node] = pscale(pshift(core), cx(0.0, 1.0));
  }
  JacobianField J;
  J.family = fam;
  J.field = CoeffField(fam.params, std::move(table));
  J.scale = grid_rms(J.field);
  return J;
}

JacobianField synthetic_J(const DiscFamily& family,
                          const std::function<Poly(double t)>& taylor_of_t) {
  if (!family.params.scalar())
    throw DomainError("synthetic Jacobians need a scalar parameter space");
  const int nodes = family.params.node_count();
  std::vector<Poly> table(nodes);
  for (int node = 0; node < nodes; ++node)
    table[node] = taylor_of_t(family.params.node(node));
  JacobianField J;
  J.family = family;
  J.field = CoeffField(family.params, std::move(table));
  J.scale = grid_rms(J.field);
  return J;
}

BoundaryJacobians compute_J_pm(const BoundaryFunction& f,
                               const DiscFamily& family, int circle_n) {
  if (family.ambient_dim != 1)
    throw DomainError("boundary Cramer forms are planar-only");
  const int nodes = family.params.node_count();
  BoundaryJacobians out;
  out.circle_n = circle_n;
  out.j_plus.assign(nodes, std::vector<cx>(circle_n));
  out.j_minus.assign(nodes, std::vector<cx>(circle_n));

  // F = f o G on the boundary torus
  std::vector<std::vector<cx>> F(nodes, std::vector<cx>(circle_n));
  for (int node = 0; node < nodes; ++node)
    for (int i = 0; i < circle_n; ++i) {
      cx zeta = std::polar(1.0, kTwoPi * i / circle_n);
      F[node][i] = f.value({family.comp[0].value_node(zeta, node)});
    }
  // d_psi F: spectral along each circle
  std::vector<std::vector<cx>> Fpsi(nodes);
  for (int node = 0; node < nodes; ++node)
    Fpsi[node] = spectral_deriv_values(F[node]);
  // d_t F: finite differences (or spectral) across nodes at fixed psi
  std::vector<std::vector<cx>> Ft(nodes, std::vector<cx>(circle_n));
  const bool periodic = family.params.kind == ParamKind::Circle;
  for (int i = 0; i < circle_n; ++i) {
    std::vector<cx> line(nodes);
    for (int node = 0; node < nodes; ++node) line[node] = F[node][i];
    std::vector<cx> d;
    if (periodic)
      d = spectral_deriv_values(line);
    else
      d = fd4_derivative(line, family.params.mesh(), false);
    for (int node = 0; node < nodes; ++node) Ft[node][i] = d[node];
  }

  for (int node = 0; node < nodes; ++node)
    for (int i = 0; i < circle_n; ++i) {
      cx zeta = std::polar(1.0, kTwoPi * i / circle_n);
      cx Gpsi = family.comp[0].dpsi_node(zeta, node);
      cx Gt = peval(family.comp[0].dt_poly_node(node), zeta);
      out.j_minus[node][i] = Fpsi[node][i] * Gt - Ft[node][i] * Gpsi;
      out.j_plus[node][i] =
          Fpsi[node][i] * std::conj(Gt) - Ft[node][i] * std::conj(Gpsi);
    }
  return out;
}

ThetaField theta_field(const JacobianField& J, int circle_n,
                       const BoundaryFunction* f) {
  ThetaField th;
  th.circle_n = circle_n;
  const DiscFamily& fam = J.family;
  const int nodes = fam.params.node_count();
  // "identically zero" is judged against the family's own magnitude: a J
  // assembled from a holomorphic f is pure quadrature noise, many orders
  // below the disc scale, and Theta is undefined there.
  const double ref = 1.0 + fam.coeff_scale();
  if (J.scale < 1e-10 * ref * ref) {
    th.degenerate = true;
    return th;
  }
  th.theta.assign(nodes, std::vector<cx>(circle_n, cx(0.0)));
  th.mask.assign(nodes, std::vector<char>(circle_n, 1));

  struct Sample {
    cx g, theta;
  };
  std::vector<Sample> samples;
  long unmasked = 0;
  for (int node = 0; node < nodes; ++node)
    for (int i = 0; i < circle_n; ++i) {
      cx zeta = std::polar(1.0, kTwoPi * i / circle_n);
      cx j = J.field.value_node(zeta, node);
      if (std::abs(j) <= 0.01 * J.scale) continue;
      cx theta = j / std::conj(j);
      th.theta[node][i] = theta;
      th.mask[node][i] = 0;
      ++unmasked;
      samples.push_back({fam.comp[0].value_node(zeta, node), theta});
    }
  if (unmasked == 0) {
    th.degenerate = true;
    return th;
  }

  // fiber-compatibility: Theta must agree at boundary points with nearly
  // equal G-images; candidate pairs found through a spatial hash
  const double mesh = fam.params.mesh();
  auto key = [mesh](cx z) {
    long long ix = (long long)std::floor(z.real() / mesh);
    long long iy = (long long)std::floor(z.imag() / mesh);
    return (ix << 24) ^ iy;
  };
  std::unordered_map<long long, std::vector<int>> cells;
  for (int s = 0; s < (int)samples.size(); ++s)
    cells[key(samples[s].g)].push_back(s);
  double worst = 0.0;
  long pairs = 0;
  for (int s = 0; s < (int)samples.size(); ++s) {
    cx g = samples[s].g;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(key(g + cx(dx * mesh, dy * mesh)));
        if (it == cells.end()) continue;
        for (int o : it->second) {
          if (o <= s) continue;
          if (std::abs(samples[o].g - g) >= mesh) continue;
          worst = std::max(worst, std::abs(samples[o].theta - samples[s].theta));
          ++pairs;
        }
      }
  }
  th.compatibility_residual = worst;
  th.pairs_compared = pairs;

  if (f && f->symbolic_derivatives && fam.ambient_dim == 1) {
    double sworst = 0.0;
    for (int node = 0; node < nodes; ++node)
      for (int i = 0; i < circle_n; ++i) {
        if (th.mask[node][i]) continue;
        cx zeta = std::polar(1.0, kTwoPi * i / circle_n);
        cx g = fam.comp[0].value_node(zeta, node);
        cx db = f->dzbar({g}, 0);
        if (std::abs(db) < 1e-8) continue;
        cx sigma = -db / std::conj(db);
        sworst = std::max(sworst, std::abs(th.theta[node][i] - sigma));
      }
    th.sigma_residual = sworst;
  }
  return th;
}

ZeroChain track_zeros(const JacobianField& J) {
  ZeroChain chain;
  const int nodes = J.family.params.node_count();
  const bool circle = J.family.params.kind == ParamKind::Circle;
  const double mesh = J.family.params.mesh();
  if (J.scale < 1e-300)
    throw DomainError("Jacobian field is identically zero: no chains");

  struct NodeRoots {
    bool zero_disc = false;
    std::vector<PolyRoot> roots;
  };
  std::vector<NodeRoots> per_node(nodes);
  for (int node = 0; node < nodes; ++node) {
    Poly p = ptrim(J.field.at_node(node));
    if (pmax_coeff(p) < 1e-10 * J.scale) {
      per_node[node].zero_disc = true;
      chain.zero_disc_nodes.push_back(node);
      continue;
    }
    per_node[node].roots = roots_in_disc(p);
  }

  struct Active {
    int branch;
    cx last;
    cx velocity{0.0};
    int last_node;
  };
  std::vector<Active> active;
  std::vector<ZeroBranch> branches;
  int prev_count = -1;

  auto kappa_of = [](const PolyRoot& r) {
    return r.on_boundary ? 0.5 * r.multiplicity : double(r.multiplicity);
  };

  for (int node = 0; node < nodes; ++node) {
    if (per_node[node].zero_disc) continue;
    const auto& roots = per_node[node].roots;
    if (prev_count >= 0 &&
        std::abs((int)roots.size() - prev_count) > 2)
      throw DomainError(
          "tracking instability: root count jumped between adjacent "
          "parameter nodes; refine the grids");
    prev_count = (int)roots.size();

    std::vector<char> root_used(roots.size(), 0), branch_used(active.size(), 0);
    struct Cand {
      double d;
      int a, r;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < (int)active.size(); ++a) {
      double dt = (node - active[a].last_node) * mesh;
      cx pred = active[a].last + active[a].velocity * dt;
      double gate =
          5.0 * dt * std::max(std::abs(active[a].velocity), 1.0) + 1e-3;
      for (int r = 0; r < (int)roots.size(); ++r) {
        double d = std::abs(roots[r].z - pred);
        if (d < gate) cands.push_back({d, a, r});
      }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& x, const Cand& y) { return x.d < y.d; });
    std::vector<Active> next;
    for (const Cand& c : cands) {
      if (root_used[c.r] || branch_used[c.a]) continue;
      root_used[c.r] = branch_used[c.a] = 1;
      Active a = active[c.a];
      double dt = (node - a.last_node) * mesh;
      a.velocity = (roots[c.r].z - a.last) / dt;
      a.last = roots[c.r].z;
      a.last_node = node;
      branches[a.branch].nodes.push_back(node);
      branches[a.branch].zeta.push_back(roots[c.r].z);
      branches[a.branch].on_boundary |= roots[c.r].on_boundary;
      next.push_back(a);
    }
    for (int r = 0; r < (int)roots.size(); ++r) {
      if (root_used[r]) continue;
      ZeroBranch b;
      b.nodes = {node};
      b.zeta = {roots[r].z};
      b.kappa = kappa_of(roots[r]);
      b.on_boundary = roots[r].on_boundary;
      branches.push_back(std::move(b));
      next.push_back({(int)branches.size() - 1, roots[r].z, cx(0.0), node});
    }
    active.swap(next);
  }

  for (auto& b : branches) {
    if (circle && (int)b.nodes.size() >= nodes - (int)chain.zero_disc_nodes.size()) {
      double gap = std::abs(b.zeta.front() - b.zeta.back());
      double speed = 1.0;
      if (b.zeta.size() > 1)
        speed = std::max(1.0, std::abs(b.zeta.back() - b.zeta[b.zeta.size() - 2]) / mesh);
      b.closed = gap < 5.0 * mesh * speed + 1e-3;
    }
    double maxabs = 0.0;
    for (cx z : b.zeta) maxabs = std::max(maxabs, std::abs(z));
    if (maxabs < 1e-6 && (int)b.nodes.size() > nodes / 2)
      chain.central_cycle_present = true;
  }
  chain.branches = std::move(branches);
  return chain;
}

double directional_derivative_check(const ExtensionField& ext,
                                    const JacobianField& J,
                                    const std::vector<Fiber>& fibers) {
  double worst = 0.0;
  for (const Fiber& fib : fibers) {
    const size_t m = fib.t.size();
    if (m < 5) continue;
    std::vector<cx> F(m);
    for (size_t i = 0; i < m; ++i)
      F[i] = ext.field.value(fib.zeta[i], fib.t[i]);
    double h = fib.t[1] - fib.t[0];
    auto dF = fd4_derivative(F, h, fib.closed);
    for (size_t i = 0; i < m; ++i) {
      cx zeta = fib.zeta[i];
      double t = fib.t[i];
      cx j = J.field.value(zeta, t);
      cx gz = J.family.comp[0].dzeta(zeta, t);
      worst = std::max(worst, std::abs(j + cx(0, 1) * zeta * gz * dF[i]));
    }
  }
  return worst;
}

}  // namespace crfolio
