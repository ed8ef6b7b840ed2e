// Acceptance suite: each criterion prints exactly one "criterion N: PASS"
// or "criterion N: FAIL (...)" line and the process exit code reflects the
// selected criterion.  Run as `crfolio_acceptance <n>` for one criterion or
// with no arguments for all ten.

#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "crfolio/extension.hpp"
#include "crfolio/hypersurface.hpp"
#include "crfolio/jacobian.hpp"
#include "crfolio/topology.hpp"
#include "crfolio/verify.hpp"

using namespace crfolio;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// --- criterion 1: boundary Jacobian closed form -------------------------
Check criterion1() {
  Check c;
  for (auto [R, r] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.0},
                      std::pair{0.7, 1.3}}) {
    auto fam = build_rotating_circles(R, r, 256);
    double worst = 0.0;
    for (int it = 0; it < 64; ++it)
      for (int ip = 0; ip < 64; ++ip) {
        double t = kTwoPi * it / 64, psi = kTwoPi * (ip + 0.37) / 64;
        cx expect = cx(0, 2 * R * r * std::sin(t - psi));
        double err = std::abs(boundary_jacobian(fam, psi, t) - expect);
        worst = std::max(worst, err / (2 * R * r));
      }
    c.require(worst < 1e-8, "rel err " + fmt(worst) + " at (R,r)=(" +
                                fmt(R) + "," + fmt(r) + ")");
  }
  return c;
}

// --- criterion 2: the rotating-circle counterexample --------------------
Check criterion2() {
  Check c;
  auto fam = build_rotating_circles(1, 2, 256);
  auto f = make_function("globevnik_2", 1);
  auto ext = analyze(f, fam, 256);
  c.require(ext.residual < 1e-10, "extension residual " + fmt(ext.residual));

  auto inter = closure_intersection_empty(fam);
  c.require(!inter.empty, "closure intersection reported empty");
  c.require(std::abs(inter.witness) < 1e-2,
            "witness " + fmt(std::abs(inter.witness)) + " from 0");

  auto J = compute_J(ext);
  double jmax = 0.0;
  for (int node = 0; node < fam.params.node_count(); ++node)
    for (double r : {0.5, 0.8, 1.0})
      for (int a = 0; a < 16; ++a)
        jmax = std::max(jmax, std::abs(J.field.value_node(
                                  r * std::polar(1.0, kTwoPi * a / 16), node)));
  c.require(jmax > 0.1 * J.scale, "J_max/scale " + fmt(jmax / J.scale));

  // finite-difference dbar residual of f on swept-region samples
  double dbar = 0.0, h = 1e-5;
  for (int it = 0; it < 16; ++it)
    for (double rad : {1.2, 2.0, 2.8}) {
      cx z = rad * std::polar(1.0, kTwoPi * it / 16);
      cx fx = (f.value({z + h}) - f.value({z - h})) / (2 * h);
      cx fy = (f.value({z + cx(0, h)}) - f.value({z - cx(0, h)})) / (2 * h);
      dbar = std::max(dbar, std::abs((fx + cx(0, 1) * fy) / 2.0));
    }
  c.require(dbar > 0.1, "dbar residual " + fmt(dbar));

  VerdictOptions opts;
  opts.circle_n = 256;
  auto rep = run_verdict(f, fam, opts);
  c.require(rep.verdict == Verdict::PreconditionFails,
            std::string("verdict ") + verdict_name(rep.verdict));
  c.require(rep.detail.find("condition_a") != std::string::npos,
            "detail does not name condition_a: " + rep.detail);

  auto swapped = analyze(f, build_rotating_circles(2, 1, 256), 256);
  c.require(swapped.residual > 0.1,
            "swapped-radii residual " + fmt(swapped.residual));
  return c;
}

// --- criterion 3: Brouwer degree --------------------------------------
Check criterion3() {
  Check c;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  auto rot = build_rotating_circles(1, 2, 256);
  for (int k = 0; k < 20; ++k) {
    cx b = (1.3 + 1.4 * u(rng)) * std::polar(1.0, kTwoPi * u(rng));
    int d = brouwer_degree(rot, b);
    c.require(d == 0, "rotating degree " + std::to_string(d));
  }

  // admissible probes for interval families must avoid the end caps: a
  // probe inside an end disc meets the side wall in only one circle, and
  // the lemma's count applies to the full boundary.
  auto trans = build_translated_circles(1.0, {cx(0), cx(1.5, 0), cx(3, 0)}, 256);
  int used = 0;
  while (used < 20) {
    cx b = cx(1.1 + 0.8 * u(rng), -0.6 + 1.2 * u(rng));
    if (std::abs(b) <= 1.05 || std::abs(b - cx(3, 0)) <= 1.05) continue;
    ++used;
    int d = brouwer_degree(trans, b);
    c.require(d == 0, "translated degree " + std::to_string(d));
  }

  // custom family: unit circles drifting along a parabola
  int res = 256;
  std::vector<std::vector<Poly>> table(res);
  for (int i = 0; i < res; ++i) {
    double t = double(i) / (res - 1);
    table[i] = {Poly{cx(2 * t, 0.5 * t * t), cx(1.0, 0)}};
  }
  auto cust = build_custom(table, ParamSpace(ParamKind::Interval, res), 1);
  used = 0;
  while (used < 20) {
    cx b = cx(0.8 + 0.5 * u(rng), -0.55 + 0.35 * u(rng));
    if (std::abs(b) <= 1.05 || std::abs(b - cx(2, 0.5)) <= 1.05) continue;
    // keep the probe within the swept band
    double d_path = 1e300;
    for (int i = 0; i < 64; ++i) {
      double t = i / 63.0;
      d_path = std::min(d_path, std::abs(b - cx(2 * t, 0.5 * t * t)));
    }
    if (d_path > 0.92) continue;
    ++used;
    int d = brouwer_degree(cust, b);
    c.require(d == 0, "custom degree " + std::to_string(d));
  }

  std::vector<int> signs;
  int d = brouwer_degree(rot, cx(2, 0), &signs);
  c.require(d == 0, "b=2 degree " + std::to_string(d));
  c.require(signs.size() == 2,
            "b=2 preimages " + std::to_string(signs.size()));
  if (signs.size() == 2)
    c.require(signs[0] + signs[1] == 0, "b=2 signs not opposite");
  return c;
}

// --- criterion 4: symmetry relation ------------------------------------
Check criterion4() {
  Check c;
  auto fam = build_rotating_circles(1, 2, 256);
  auto J = compute_J(analyze(make_function("globevnik_2", 1), fam, 256));
  auto chain = track_zeros(J);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int used = 0;
  while (used < 20) {
    cx b = (3.2 + 2.0 * u(rng)) * std::polar(1.0, kTwoPi * u(rng));
    auto rep = symmetry_relation(J, chain, fam, b);
    if (!rep.admissible) continue;
    ++used;
    c.require(std::abs(rep.lhs) < 0.05, "lhs " + fmt(rep.lhs));
    c.require(std::abs(rep.rhs) < 0.05, "rhs " + fmt(rep.rhs));
    c.require(rep.abs_gap < 0.05, "gap " + fmt(rep.abs_gap));
  }

  auto Jz = synthetic_J(fam, [](double) { return Poly{0.0, 1.0}; });
  auto chz = track_zeros(Jz);
  auto rep = symmetry_relation(Jz, chz, fam, cx(0));
  c.require(rep.admissible, "synthetic probe inadmissible");
  c.require(std::abs(rep.lhs - 2.0) < 0.05, "synthetic lhs " + fmt(rep.lhs));
  c.require(std::abs(rep.rhs - 2.0) < 0.05, "synthetic rhs " + fmt(rep.rhs));
  return c;
}

// --- criterion 5: zero tracking ----------------------------------------
Check criterion5() {
  Check c;
  auto fam = build_rotating_circles(1, 2, 256);
  auto J = compute_J(analyze(make_function("globevnik_2", 1), fam, 256));
  auto chain = track_zeros(J);

  c.require(chain.central_cycle_present, "no central branch");
  double central_kappa = 0.0;
  for (const auto& br : chain.branches) {
    bool central = true;
    for (cx z : br.zeta)
      if (std::abs(z) > 1e-6) central = false;
    if (central && !br.zeta.empty()) central_kappa = std::max(central_kappa, br.kappa);
  }
  c.require(central_kappa >= 1.0, "central kappa " + fmt(central_kappa));

  // per-t sum rule: the argument-principle count of J on a circle that
  // isolates the interior roots from the boundary roots equals the sum of
  // interior kappas, as an exact integer, at 50 random nodes
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> pick(0, fam.params.node_count() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    int node = pick(rng);
    double total = 0.0, rmax = 0.0;
    for (const auto& br : chain.branches) {
      if (br.on_boundary) continue;
      for (size_t i = 0; i < br.nodes.size(); ++i)
        if (br.nodes[i] == node) {
          total += br.kappa;
          rmax = std::max(rmax, std::abs(br.zeta[i]));
        }
    }
    int count = -1;
    for (double frac : {0.5, 0.65, 0.35, 0.8}) {
      try {
        count = zeros_inside_circle(J.field.at_node(node), cx(0),
                                    rmax + frac * (1.0 - rmax));
        break;
      } catch (const NearSingularError&) {
      }
    }
    c.require(std::abs(count - total) < 1e-9,
              "node " + std::to_string(node) + ": count " +
                  std::to_string(count) + " vs kappa sum " + fmt(total));
  }
  return c;
}

// --- criterion 6: fiber tracing ----------------------------------------
Check criterion6() {
  Check c;
  auto rot = build_rotating_circles(1, 2, 256);
  auto fibers = trace_fiber(rot, cx(0));
  c.require(fibers.size() == 1, "fiber components " + std::to_string(fibers.size()));
  double worst = 0.0;
  for (const auto& fib : fibers)
    for (size_t i = 0; i < fib.t.size(); ++i)
      worst = std::max(worst,
                       std::abs(fib.zeta[i] + std::polar(0.5, fib.t[i])));
  c.require(worst < 1e-8, "closed-form gap " + fmt(worst));

  auto defect_of = [](const DiscFamily& fam, const std::vector<Fiber>& fs,
                      cx b) {
    double d = 0.0;
    for (const auto& fib : fs)
      for (size_t i = 0; i < fib.t.size(); ++i) {
        double t = fib.t[i];
        if (fam.params.kind == ParamKind::Circle)
          t = std::fmod(std::fmod(t, kTwoPi) + kTwoPi, kTwoPi);
        d = std::max(d, std::abs(fam.eval(fib.zeta[i], t) - b));
      }
    return d;
  };
  for (cx b : {cx(0), cx(1.7, 0.4), cx(-2.1, 0.8)})
    c.require(defect_of(rot, trace_fiber(rot, b), b) < 1e-8,
              "rotating defect at probe");
  auto trans = build_translated_circles(1.0, {cx(0), cx(3, 0)}, 256);
  for (cx b : {cx(0.5, 0), cx(1.5, 0.3), cx(2.8, -0.4)})
    c.require(defect_of(trans, trace_fiber(trans, b), b) < 1e-8,
              "translated defect at probe");
  return c;
}

// --- criterion 7: degeneracy equivalence --------------------------------
Check criterion7() {
  Check c;
  std::vector<DiscFamily> fams;
  fams.push_back(build_translated_circles(1.0, {cx(0), cx(1.5, 0), cx(3, 0)}, 256));
  fams.push_back(build_rotating_circles(2, 1, 256));
  const char* specs[] = {"z_sq", "expr: (x + i*y)^3 + 2*(x + i*y)", "const"};
  for (const auto& fam : fams)
    for (const char* spec : specs) {
      VerdictOptions opts;
      opts.circle_n = 256;
      auto rep = run_verdict(make_function(spec, 1), fam, opts);
      std::string tag = std::string(spec) + " on " + fam.builder + ": ";
      c.require(rep.j_max_rel < 1e-8, tag + "J_max " + fmt(rep.j_max_rel));
      c.require(rep.fiber_spread >= 0 && rep.fiber_spread < 1e-6,
                tag + "fiber spread " + fmt(rep.fiber_spread));
      c.require(rep.cr_residual >= 0 && rep.cr_residual < 1e-6,
                tag + "CR residual " + fmt(rep.cr_residual));
      c.require(rep.verdict == Verdict::HolomorphicConfirmed,
                tag + verdict_name(rep.verdict));
    }
  return c;
}

// --- criterion 8: jump profile -----------------------------------------
Check criterion8() {
  Check c;
  auto fam = build_translated_circles(1.0, {cx(0), cx(3, 0)}, 256);
  auto J = synthetic_J(fam, [](double) { return Poly{-0.1, 1.0}; });
  auto chain = track_zeros(J);
  auto prof = jump_profile(J, chain, fam, {cx(1.55, -3), cx(1.55, 3)}, 50);

  c.require(std::abs(prof.Z.front()) < 0.05,
            "Z at start " + fmt(prof.Z.front()));
  c.require(std::abs(prof.Z.back()) < 0.05, "Z at end " + fmt(prof.Z.back()));

  int admissible = 0;
  for (size_t i = 0; i < prof.probes.size(); ++i) {
    if (!prof.admissible[i]) continue;
    ++admissible;
    double frac = std::abs(prof.Z[i] - std::round(prof.Z[i]));
    c.require(frac < 0.05, "Z non-integer (" + fmt(prof.Z[i]) + ") at probe " +
                               std::to_string(i));
  }
  c.require(admissible >= 40,
            "only " + std::to_string(admissible) + " admissible probes");

  double mesh = 6.0 / 50.0;
  for (size_t i = 1; i < prof.N.size(); ++i)
    if (prof.admissible[i] && prof.admissible[i - 1])
      c.require(std::abs(prof.N[i] - prof.N[i - 1]) < 10 * mesh * (1 + J.scale),
                "N jump " + fmt(std::abs(prof.N[i] - prof.N[i - 1])) +
                    " at probe " + std::to_string(i));
  return c;
}

// --- criterion 9: hypersurface layer -----------------------------------
Check criterion9() {
  Check c;
  auto sphere = make_surface("sphere");
  auto hopf = build_hopf_discs(8);
  auto kh = k_mu_reality(hopf, sphere);
  c.require(kh.max_rel_imag < 1e-8, "hopf Im K " + fmt(kh.max_rel_imag));
  auto tl = build_tangent_lines(1.0, 0.5, 8);
  auto kt = k_mu_reality(tl, sphere);
  c.require(kt.max_rel_imag < 1e-8, "tangent-line Im K " + fmt(kt.max_rel_imag));

  auto f = make_function("abs_z1_sq", 2);
  auto ext = analyze(f, hopf, 256);
  c.require(ext.residual < 1e-12, "hopf trace residual " + fmt(ext.residual));

  double s = 1 / std::sqrt(2.0);
  double res = tangential_cr_residual(f, sphere, {{cx(s, 0), cx(s, 0)}});
  c.require(std::abs(res - 0.5) < 1e-4, "tangential residual " + fmt(res));

  // antisymmetry of the tangential operator under index swap, exact
  for (auto& p : std::vector<std::array<cx, 2>>{
           {cx(s, 0), cx(s, 0)}, {cx(0.6, 0), cx(0, 0.8)}, {cx(1, 0), cx(0)}}) {
    cx d1 = sphere.dbar_rho(p, 0), d2 = sphere.dbar_rho(p, 1);
    std::vector<cx> zz{p[0], p[1]};
    cx f1 = f.dzbar(zz, 0), f2 = f.dzbar(zz, 1);
    cx ab = d1 * f2 - d2 * f1;
    cx ba = d2 * f1 - d1 * f2;
    c.require(ab == -ba, "antisymmetry not exact");
  }
  return c;
}

// --- criterion 10: determinism and grid stability -----------------------
std::string evidence_string(const VerdictReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << verdict_name(r.verdict) << '|' << r.detail << '|'
     << r.extension_residual << '|' << r.j_max_rel << '|' << r.fiber_spread
     << '|' << r.cr_residual << '|' << r.condition_a;
  if (r.homology) {
    os << "|probes:" << r.homology->probes_used.size() << "|";
    for (int w : r.homology->central_image_winding) os << w << ',';
  }
  for (const auto& s : r.symmetry)
    os << '|' << s.lhs << ';' << s.rhs << ';' << s.admissible;
  return os.str();
}

Check criterion10() {
  Check c;
  auto fam = build_translated_circles(1.0, {cx(0), cx(1.5, 0), cx(3, 0)}, 128);
  auto f = make_function("z_sq", 1);
  VerdictOptions opts;
  opts.circle_n = 128;
  std::string a = evidence_string(run_verdict(f, fam, opts));
  std::string b = evidence_string(run_verdict(f, fam, opts));
  c.require(a == b, "verdict evidence differs between identical runs");

  // doubling all grids preserves verdicts and integer quantities
  for (int res : {128, 256}) {
    VerdictOptions o;
    o.circle_n = res == 128 ? 128 : 256;
    auto fam2 = build_translated_circles(1.0, {cx(0), cx(1.5, 0), cx(3, 0)}, res);
    auto rep = run_verdict(f, fam2, o);
    c.require(rep.verdict == Verdict::HolomorphicConfirmed,
              std::string("res ") + std::to_string(res) + ": " +
                  verdict_name(rep.verdict));
  }
  for (int res : {128, 256}) {
    auto rot = build_rotating_circles(2, 1, res);
    auto v = homology_test(rot);
    c.require(v.condition_a && v.condition_iii,
              "homology flipped at res " + std::to_string(res));
    int deg = brouwer_degree(rot, cx(2.0, 0.3));
    c.require(deg == 0, "degree changed at res " + std::to_string(res));
  }
  // winding of the synthetic chain is grid-stable
  for (int res : {128, 256}) {
    auto fam3 = build_rotating_circles(1, 2, res);
    auto J = synthetic_J(fam3, [](double) { return Poly{0.0, 1.0}; });
    auto chain = track_zeros(J);
    c.require(chain.branches.size() == 1 && chain.central_cycle_present,
              "synthetic chain changed at res " + std::to_string(res));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::function<Check()> criteria[] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  int lo = 1, hi = 10;
  if (argc > 1) {
    lo = hi = std::atoi(argv[1]);
    if (lo < 1 || lo > 10) {
      std::fprintf(stderr, "usage: %s [1-10]\n", argv[0]);
      return 2;
    }
  }
  bool all_ok = true;
  for (int i = lo; i <= hi; ++i) {
    Check c;
    try {
      c = criteria[i - 1]();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    if (c.ok)
      std::printf("criterion %d: PASS\n", i);
    else
      std::printf("criterion %d: FAIL (%s)\n", i, c.why.c_str());
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
