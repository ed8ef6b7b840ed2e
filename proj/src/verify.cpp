#include "crfolio/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "crfolio/hypersurface.hpp"

namespace crfolio {

namespace {

double var_arg(const std::vector<cx>& vals, bool closed) {
  double total = 0.0;
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    total += std::arg(vals[i + 1] / vals[i]);
  if (closed && vals.size() > 1) total += std::arg(vals.front() / vals.back());
  return total;
}

int polyline_winding_closed(const std::vector<cx>& curve, cx b) {
  double total = 0.0;
  for (size_t i = 0; i < curve.size(); ++i) {
    cx u = curve[i] - b, v = curve[(i + 1) % curve.size()] - b;
    total += std::arg(v / u);
  }
  return (int)std::lround(total / kTwoPi);
}

// branch image curve in the z-plane
std::vector<cx> branch_image(const ZeroBranch& br, const DiscFamily& fam) {
  std::vector<cx> out(br.nodes.size());
  for (size_t i = 0; i < br.nodes.size(); ++i)
    out[i] = fam.comp[0].value_node(br.zeta[i], br.nodes[i]);
  return out;
}

// fiber phase variation of Theta = J / conj(J), scaled by 2 pi
double fiber_phase_turns(const JacobianField& J, const std::vector<Fiber>& fibers,
                         bool* ok) {
  double turns = 0.0;
  if (ok) *ok = true;
  for (const Fiber& fib : fibers) {
    std::vector<cx> theta;
    theta.reserve(fib.t.size());
    for (size_t i = 0; i < fib.t.size(); ++i) {
      cx j = J.field.value(fib.zeta[i], fib.t[i]);
      if (std::abs(j) <= 0.01 * J.scale) {
        if (ok) *ok = false;
        continue;
      }
      theta.push_back(j / std::conj(j));
    }
    if (theta.size() > 1) turns += var_arg(theta, fib.closed) / kTwoPi;
  }
  return turns;
}

double fd_dbar_residual(const BoundaryFunction& f,
                        const std::vector<cx>& points) {
  double worst = 0.0;
  const double h = 1e-5;
  for (cx z : points) {
    cx fx = (f.value({z + h}) - f.value({z - h})) / (2 * h);
    cx fy = (f.value({z + cx(0, h)}) - f.value({z - cx(0, h)})) / (2 * h);
    worst = std::max(worst, std::abs(0.5 * (fx + cx(0, 1) * fy)));
  }
  return worst;
}

std::vector<cx> region_samples(const DiscFamily& fam, int per_node) {
  std::vector<cx> pts;
  const int nodes = fam.params.node_count();
  const int stride = std::max(1, nodes / 64);
  for (int node = 0; node < nodes; node += stride)
    for (int i = 0; i < per_node; ++i)
      pts.push_back(fam.comp[0].value_node(
          std::polar(1.0, kTwoPi * i / per_node), node));
  return pts;
}

}  // namespace

SymmetryReport symmetry_relation(const JacobianField& J, const ZeroChain& chain,
                                 const DiscFamily& family, cx b) {
  SymmetryReport rep;
  rep.b = b;
  auto fibers = trace_fiber(family, b);
  rep.fiber_components = (int)fibers.size();
  const double mesh = family.params.mesh();
  const int nodes = family.params.node_count();

  // admissibility: the fiber must stay clear of every tracked root
  std::vector<std::vector<cx>> roots_at_node(nodes);
  for (const auto& br : chain.branches)
    for (size_t i = 0; i < br.nodes.size(); ++i)
      roots_at_node[br.nodes[i]].push_back(br.zeta[i]);
  bool admissible = true;
  for (const Fiber& fib : fibers)
    for (size_t i = 0; i < fib.t.size(); ++i) {
      int node = (int)std::lround(fib.t[i] / mesh);
      node = ((node % nodes) + nodes) % nodes;
      for (cx r : roots_at_node[node])
        if (std::abs(r - fib.zeta[i]) < 5.0 * mesh) admissible = false;
    }

  bool phase_ok = true;
  rep.rhs = fiber_phase_turns(J, fibers, &phase_ok);
  if (!phase_ok) admissible = false;

  double lhs = 0.0;
  for (const auto& br : chain.branches) {
    if (!br.closed || br.nodes.size() < 3) continue;
    lhs += 2.0 * br.kappa * polyline_winding_closed(branch_image(br, family), b);
  }
  rep.lhs = lhs;
  rep.abs_gap = std::abs(rep.lhs - rep.rhs);
  rep.admissible = admissible;
  return rep;
}

JumpProfile jump_profile(const JacobianField& J, const ZeroChain& chain,
                         const DiscFamily& family,
                         const std::vector<cx>& path_vertices, int n_probes) {
  if (path_vertices.size() < 2)
    throw ConfigError("jump profile needs a path with at least two vertices");
  if (n_probes < 2) throw ConfigError("jump profile needs at least two probes");
  if (family.ambient_dim != 1)
    throw DomainError("jump profile is planar-only");

  JumpProfile prof;
  // uniform arclength sampling of the polyline
  std::vector<double> cum{0.0};
  for (size_t i = 0; i + 1 < path_vertices.size(); ++i)
    cum.push_back(cum.back() +
                  std::abs(path_vertices[i + 1] - path_vertices[i]));
  double total_len = cum.back();
  for (int k = 0; k < n_probes; ++k) {
    double s = total_len * k / (n_probes - 1);
    size_t seg = 0;
    while (seg + 2 < cum.size() && cum[seg + 1] < s) ++seg;
    double mu = (s - cum[seg]) /
                std::max(cum[seg + 1] - cum[seg], 1e-300);
    prof.probes.push_back(path_vertices[seg] +
                          mu * (path_vertices[seg + 1] - path_vertices[seg]));
  }

  const double mesh = family.params.mesh();
  std::vector<std::vector<cx>> images;
  for (const auto& br : chain.branches) images.push_back(branch_image(br, family));

  // end-disc closures for Interval parameters (the side boundary of the
  // parameter cylinder)
  struct EndDisc {
    cx c;
    double r;
  };
  std::vector<EndDisc> ends;
  if (family.params.kind == ParamKind::Interval) {
    for (int node : {0, family.params.node_count() - 1}) {
      const Poly& p = family.comp[0].at_node(node);
      double r = 0.0;
      for (size_t k = 1; k < p.size(); ++k) r += std::abs(p[k]);
      ends.push_back({p.empty() ? cx(0.0) : p[0], r});
    }
  }

  for (int k = 0; k < n_probes; ++k) {
    cx b = prof.probes[k];
    bool admissible = true;
    for (const auto& img : images)
      for (cx z : img) {
        double d = std::abs(z - b);
        if (d < 1e-6) {
          std::ostringstream os;
          os << "path hits a chain point near probe " << k;
          throw DomainError(os.str());
        }
        if (d < 5.0 * mesh) admissible = false;
      }
    for (const EndDisc& e : ends)
      if (std::abs(b - e.c) < e.r + 5.0 * mesh) admissible = false;
    prof.admissible.push_back(admissible);

    cx chi(0.0);
    for (size_t j = 0; j < images.size(); ++j) {
      const auto& img = images[j];
      cx acc(0.0);
      for (size_t i = 0; i + 1 < img.size(); ++i)
        acc += 0.5 * (1.0 / (img[i] - b) + 1.0 / (img[i + 1] - b)) *
               (img[i + 1] - img[i]);
      if (chain.branches[j].closed && img.size() > 1)
        acc += 0.5 * (1.0 / (img.back() - b) + 1.0 / (img.front() - b)) *
               (img.front() - img.back());
      chi += chain.branches[j].kappa * acc;
    }
    chi /= cx(0.0, kPi);
    prof.chi.push_back(chi);

    double z_val = 0.0;
    if (admissible) {
      auto fibers = trace_fiber(family, b);
      z_val = fiber_phase_turns(J, fibers, nullptr);
    }
    prof.Z.push_back(z_val);
    prof.N.push_back(chi - z_val);
  }

  // signed crossings of the probe path with the chain images
  auto cross = [](cx u, cx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  for (int k = 0; k + 1 < n_probes; ++k) {
    cx a0 = prof.probes[k], a1 = prof.probes[k + 1];
    double signed_kappa = 0.0;
    bool any = false;
    for (size_t j = 0; j < images.size(); ++j) {
      const auto& img = images[j];
      size_t segs = img.size() - 1 + (chain.branches[j].closed ? 1 : 0);
      for (size_t i = 0; i < segs; ++i) {
        cx c0 = img[i], c1 = img[(i + 1) % img.size()];
        cx d1 = a1 - a0, d2 = c1 - c0;
        double denom = cross(d1, d2);
        if (std::abs(denom) < 1e-14) continue;
        double s = cross(c0 - a0, d2) / denom;
        double u = cross(c0 - a0, d1) / denom;
        if (s < 0.0 || s > 1.0 || u < 0.0 || u > 1.0) continue;
        signed_kappa += (denom > 0 ? 1.0 : -1.0) * chain.branches[j].kappa;
        any = true;
      }
    }
    if (any) prof.jump_events.push_back({k, signed_kappa});
  }
  return prof;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::HolomorphicConfirmed: return "HOLOMORPHIC_CONFIRMED";
    case Verdict::CrConfirmed: return "CR_CONFIRMED";
    case Verdict::ConditionStarFails: return "CONDITION_STAR_FAILS";
    case Verdict::PreconditionFails: return "PRECONDITION_FAILS";
    case Verdict::NondegenerateWitness: return "NONDEGENERATE_WITNESS";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

VerdictReport run_verdict(const BoundaryFunction& f, const DiscFamily& family,
                          const VerdictOptions& opts) {
  VerdictReport rep;
  rep.builder = family.builder;
  rep.builder_params = family.builder_params;
  rep.function_name = f.name;
  rep.ambient_dim = family.ambient_dim;

  rep.regularity = regularity_audit(family);
  if (!rep.regularity.interior_rank_ok) {
    rep.verdict = Verdict::PreconditionFails;
    rep.detail = "regularity: a disc is not immersed";
    return rep;
  }

  ExtensionField ext;
  try {
    ext = analyze(f, family, opts.circle_n);
  } catch (const DomainError& e) {
    rep.verdict = Verdict::PreconditionFails;
    rep.detail = e.what();
    return rep;
  }
  rep.extension_residual = ext.residual;
  rep.extension_tolerance = ext.tolerance;
  if (!ext.extendible()) {
    rep.verdict = Verdict::ConditionStarFails;
    std::ostringstream os;
    os << "per-disc extension fails: residual " << ext.residual;
    rep.detail = os.str();
    return rep;
  }

  if (family.ambient_dim == 1) {
    HomologyVerdict hom = homology_test(family);
    rep.homology = hom;
    rep.condition_a = hom.condition_a;
    if (!hom.condition_a) {
      rep.verdict = Verdict::PreconditionFails;
      std::ostringstream os;
      os << "condition_a: closed discs share the point " << hom.common_point;
      rep.detail = os.str();
      return rep;
    }

    JacobianField J = compute_J(ext);
    double j_max = 0.0;
    for (int node = 0; node < family.params.node_count(); ++node)
      j_max = std::max(j_max, pmax_coeff(J.field.at_node(node)));
    double scale_ref =
        (1.0 + family.coeff_scale()) * (1.0 + ext.boundary_rms);
    rep.j_max_rel = j_max / scale_ref;

    // degenerate-path checks run unconditionally: they are the evidence
    std::mt19937_64 rng(opts.seed == 0 ? 0x9e3779b97f4a7c15ull : opts.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double spread = 0.0;
    int traced = 0;
    const int nodes = family.params.node_count();
    for (int k = 0; k < opts.fiber_probes && traced < opts.fiber_probes; ++k) {
      int node = (int)(unif(rng) * nodes) % nodes;
      cx zeta = std::polar(0.2 + 0.6 * unif(rng), kTwoPi * unif(rng));
      cx b = family.comp[0].value_node(zeta, node);
      std::vector<Fiber> fibers;
      try {
        fibers = trace_fiber(family, b);
      } catch (const DomainError&) {
        continue;
      }
      for (const Fiber& fib : fibers) {
        if (fib.t.size() < 2) continue;
        cx f0 = ext.field.value(fib.zeta[0], fib.t[0]);
        for (size_t i = 1; i < fib.t.size(); ++i)
          spread = std::max(
              spread, std::abs(ext.field.value(fib.zeta[i], fib.t[i]) - f0));
        ++traced;
      }
    }
    rep.fiber_spread = spread;
    rep.cr_residual = fd_dbar_residual(f, region_samples(family, 16));

    if (rep.j_max_rel < 1e-8) {
      if (rep.fiber_spread < 1e-6 && rep.cr_residual < 1e-6) {
        rep.verdict = Verdict::HolomorphicConfirmed;
        rep.detail = "degenerate Jacobian; f holomorphic on the swept region";
      } else {
        rep.verdict = Verdict::Inconclusive;
        rep.detail = "degeneracy indicators disagree";
      }
      return rep;
    }

    // all preconditions pass yet J is nondegenerate: numerical
    // counterexample to the theorem; attach symmetry diagnostics
    ZeroChain chain;
    try {
      chain = track_zeros(J);
      ThetaField th = theta_field(J, opts.circle_n);
      rep.theta_compatibility = th.compatibility_residual;
      double far = 0.0;
      for (int node = 0; node < nodes; ++node) {
        const Poly& p = family.comp[0].at_node(node);
        for (size_t c = 0; c < p.size(); ++c) far = std::max(far, std::abs(p[c]));
      }
      for (int k = 0; k < 3; ++k)
        rep.symmetry.push_back(symmetry_relation(
            J, chain, family, std::polar(3.0 * far + 1.0, kTwoPi * k / 3.0)));
    } catch (const std::exception&) {
      // diagnostics are best-effort
    }
    rep.verdict = Verdict::NondegenerateWitness;
    rep.detail =
        "all preconditions pass but the Jacobian field is nondegenerate";
    return rep;
  }

  // ambient dimension 2
  if (family.builder == "hopf_discs") {
    rep.condition_a = false;
    rep.verdict = Verdict::PreconditionFails;
    rep.detail = "condition_a: every closed disc contains 0";
    return rep;
  }
  if (family.builder != "tangent_lines") {
    rep.verdict = Verdict::Inconclusive;
    rep.detail = "no certified homology flag for this family";
    return rep;
  }
  rep.condition_a = true;

  MinorField minors = compute_minors(ext);
  double mscale = 1e-300;
  for (double s : minors.scale) mscale = std::max(mscale, s);
  double mmax = 0.0;
  for (const auto& vec : minors.samples)
    for (const cx& v : vec) mmax = std::max(mmax, std::abs(v));
  double scale_ref = (1.0 + family.coeff_scale()) * (1.0 + ext.boundary_rms);
  rep.j_max_rel = mmax / scale_ref;

  Hypersurface sphere = make_surface("sphere");
  std::vector<std::array<cx, 2>> pts;
  const int nodes = family.params.node_count();
  const int stride = std::max(1, nodes / 64);
  for (int node = 0; node < nodes; node += stride)
    for (int i = 0; i < 8; ++i) {
      cx zeta = std::polar(1.0, kTwoPi * i / 8.0);
      pts.push_back({family.comp[0].value_node(zeta, node),
                     family.comp[1].value_node(zeta, node)});
    }
  rep.cr_residual = tangential_cr_residual(f, sphere, pts);

  if (rep.j_max_rel < 1e-8) {
    if (rep.cr_residual < 1e-6) {
      rep.verdict = Verdict::CrConfirmed;
      rep.detail = "degenerate minors; f is CR on the sphere samples";
    } else {
      rep.verdict = Verdict::Inconclusive;
      rep.detail = "degeneracy indicators disagree";
    }
    return rep;
  }
  rep.verdict = Verdict::NondegenerateWitness;
  rep.detail = "minors nondegenerate with all preconditions passing";
  return rep;
}

SuiteReport counterexample_suite() {
  SuiteReport suite;
  auto check = [&](const std::string& name, bool pass, double value) {
    suite.assertions.push_back({name, pass, value});
  };

  {  // rotating circles with f = z^2 / zbar
    DiscFamily fam = build_rotating_circles(1.0, 2.0, 128);
    BoundaryFunction f = make_function("globevnik_2", 1);
    ExtensionField ext = analyze(f, fam, 128);
    check("rotating.extension_residual_small", ext.residual < 1e-10,
          ext.residual);
    IntersectionResult inter = closure_intersection_empty(fam);
    check("rotating.closed_discs_share_a_point",
          !inter.empty && std::abs(inter.witness) < 1e-2,
          std::abs(inter.witness));
    JacobianField J = compute_J(ext);
    double j_max = 0.0;
    for (int node = 0; node < fam.params.node_count(); ++node)
      j_max = std::max(j_max, pmax_coeff(J.field.at_node(node)));
    double scale_ref = (1.0 + fam.coeff_scale()) * (1.0 + ext.boundary_rms);
    check("rotating.jacobian_nondegenerate", j_max / scale_ref > 0.1,
          j_max / scale_ref);
    double dbar = fd_dbar_residual(f, region_samples(fam, 16));
    check("rotating.f_not_holomorphic", dbar > 0.1, dbar);
    VerdictReport rep = run_verdict(f, fam, {128, 10, 0});
    check("rotating.verdict_precondition_fails",
          rep.verdict == Verdict::PreconditionFails, 0.0);
    // swapped radii: the pole moves inside the disc and (*) fails
    DiscFamily swapped = build_rotating_circles(2.0, 1.0, 128);
    ExtensionField ext2 = analyze(f, swapped, 128);
    check("rotating.swapped_radii_pole_inside", ext2.residual > 0.1,
          ext2.residual);
  }

  {  // Hopf-foliation discs with f = |z1|^2
    DiscFamily fam = build_hopf_discs(8);
    BoundaryFunction f = make_function("abs_z1_sq", 2);
    ExtensionField ext = analyze(f, fam, 64);
    // trace is constant per disc: everything except the mean must vanish
    double nonconst = ext.residual;
    for (int node = 0; node < fam.params.node_count(); ++node) {
      const Poly& p = ext.field.at_node(node);
      double tail = 0.0;
      for (size_t k = 1; k < p.size(); ++k) tail += std::norm(p[k]);
      nonconst = std::max(nonconst, std::sqrt(tail));
    }
    check("hopf.traces_constant", nonconst < 1e-12, nonconst);
    double center = 0.0;
    for (int node = 0; node < fam.params.node_count(); ++node)
      for (int c = 0; c < 2; ++c)
        center = std::max(center,
                          std::abs(fam.comp[c].value_node(cx(0.0), node)));
    check("hopf.discs_share_origin", center < 1e-12, center);
    Hypersurface sphere = make_surface("sphere");
    double s = 1.0 / std::sqrt(2.0);
    double res = tangential_cr_residual(f, sphere, {{cx(s), cx(s)}});
    check("hopf.tangential_residual_half", std::abs(res - 0.5) < 1e-4, res);
  }

  suite.all_pass = true;
  for (const auto& a : suite.assertions) suite.all_pass &= a.pass;
  return suite;
}

}  // namespace crfolio
