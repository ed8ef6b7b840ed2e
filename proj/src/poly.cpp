#include "crfolio/poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace crfolio {

cx peval(const Poly& p, cx z) {
  cx acc{0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly pderiv(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, cx{0.0});
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly padd(const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), cx{0.0});
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

Poly pscale(const Poly& a, cx s) {
  Poly c = a;
  for (auto& v : c) v *= s;
  return c;
}

Poly pshift(const Poly& a) {
  Poly c(a.size() + 1, cx{0.0});
  for (size_t i = 0; i < a.size(); ++i) c[i + 1] = a[i];
  return c;
}

double pmax_coeff(const Poly& p) {
  double m = 0.0;
  for (const cx& v : p) m = std::max(m, std::abs(v));
  return m;
}

Poly ptrim(const Poly& p, double rel_tol) {
  const double floor_val = pmax_coeff(p) * rel_tol;
  size_t n = p.size();
  while (n > 0 && std::abs(p[n - 1]) <= floor_val) --n;
  Poly out(p.begin(), p.begin() + n);
  return out;
}

namespace {

// Winding of p along the closed polyline through `verts`, sampled with m
// points per edge. Returns false when samples come too close to a zero or
// the phase steps are too coarse to trust.
bool polyline_winding(const Poly& p, std::span<const cx> verts, int m,
                      double floor_val, int& turns) {
  double total = 0.0;
  cx prev = peval(p, verts[0]);
  if (std::abs(prev) <= floor_val) return false;
  const size_t ne = verts.size();
  for (size_t e = 0; e < ne; ++e) {
    const cx a = verts[e];
    const cx b = verts[(e + 1) % ne];
    for (int i = 1; i <= m; ++i) {
      const cx z = a + (b - a) * (static_cast<double>(i) / m);
      const cx cur = peval(p, z);
      if (std::abs(cur) <= floor_val) return false;
      const double step = std::arg(cur / prev);
      if (std::abs(step) > 2.2) return false;
      total += step;
      prev = cur;
    }
  }
  const double t = total / kTwoPi;
  if (std::abs(t - std::round(t)) > 0.1) return false;
  turns = static_cast<int>(std::round(t));
  return true;
}

// Zero count inside an axis-aligned box, with automatic sample refinement
// and a tiny box nudge when a zero sits on the walls. Returns -1 on failure.
int count_box(const Poly& p, cx lo, double w, double floor_val) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::array<cx, 4> verts = {lo, lo + cx{w, 0.0}, lo + cx{w, w},
                                     lo + cx{0.0, w}};
    // Coarse sampling can alias the fast phase swing near a zero that sits
    // close to a wall into a wrong-but-integral total, so a count is only
    // trusted when two consecutive refinement levels agree.
    int prev_turns = -100;
    for (int m = 16; m <= 2048; m *= 2) {
      int turns = 0;
      if (polyline_winding(p, verts, m, floor_val, turns)) {
        if (turns == prev_turns) return turns;
        prev_turns = turns;
      } else {
        prev_turns = -100;
      }
    }
    // A zero is (nearly) on the wall: grow the box and retry.
    const double eps = w * 0.01 * (attempt + 1);
    lo -= cx{eps, eps};
    w += 2.0 * eps;
  }
  return -1;
}

cx newton_polish(const Poly& p, const Poly& dp, cx z0, int iters = 80) {
  cx z = z0;
  for (int i = 0; i < iters; ++i) {
    const cx pv = peval(p, z);
    const cx dv = peval(dp, z);
    if (std::abs(dv) == 0.0) break;
    const cx step = pv / dv;
    z -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return z;
}

}  // namespace

int zeros_inside_circle(const Poly& p, cx center, double r) {
  const double floor_val = pmax_coeff(p) * 1e-13;
  for (int m = 64; m <= 8192; m *= 2) {
    double total = 0.0;
    cx prev = peval(p, center + cx{r, 0.0});
    if (std::abs(prev) <= floor_val) break;
    bool ok = true;
    for (int i = 1; i <= m; ++i) {
      const cx z = center + std::polar(r, kTwoPi * i / m);
      const cx cur = peval(p, z);
      if (std::abs(cur) <= floor_val || std::abs(std::arg(cur / prev)) > 2.2) {
        ok = false;
        break;
      }
      total += std::arg(cur / prev);
      prev = cur;
    }
    if (ok) return static_cast<int>(std::round(total / kTwoPi));
  }
  throw NearSingularError("zeros_inside_circle: zero on or near the circle");
}

std::vector<PolyRoot> roots_in_disc(const Poly& p_in, double boundary_tol) {
  const Poly p = ptrim(p_in);
  if (p.size() <= 1) return {};
  const Poly dp = pderiv(p);
  const double floor_val = pmax_coeff(p) * 1e-13;
  const double pad = 0.02;

  struct Box {
    cx lo;
    double w;
  };
  std::vector<Box> stack{{cx{-1.0 - pad, -1.0 - pad}, 2.0 * (1.0 + pad)}};
  std::vector<cx> raw;

  while (!stack.empty()) {
    const Box box = stack.back();
    stack.pop_back();
    // Reject boxes entirely outside the padded disc.
    const double dx = std::max(std::abs(box.lo.real() + box.w / 2) - box.w / 2, 0.0);
    const double dy = std::max(std::abs(box.lo.imag() + box.w / 2) - box.w / 2, 0.0);
    if (dx * dx + dy * dy > (1.0 + 2.0 * pad) * (1.0 + 2.0 * pad)) continue;

    const int count = count_box(p, box.lo, box.w, floor_val);
    if (count == 0) continue;
    if (count < 0 && box.w > 1e-6) {
      // Could not certify: subdivide and let smaller boxes sort it out.
    } else if (count < 0) {
      raw.push_back(box.lo + cx{box.w / 2, box.w / 2});
      continue;
    }
    // Polish once a box isolates a simple zero; clusters and multiple zeros
    // are driven down to tiny boxes first so the local winding can count them.
    if (count > 0 && ((count == 1 && box.w < 1e-3) || box.w <= 1e-6)) {
      const cx z = newton_polish(p, dp, box.lo + cx{box.w / 2, box.w / 2});
      raw.push_back(z);
      continue;
    }
    const double h = box.w / 2;
    stack.push_back({box.lo, h});
    stack.push_back({box.lo + cx{h, 0.0}, h});
    stack.push_back({box.lo + cx{0.0, h}, h});
    stack.push_back({box.lo + cx{h, h}, h});
  }

  // Cluster polished points and recover multiplicities by local winding.
  std::vector<PolyRoot> roots;
  std::vector<bool> used(raw.size(), false);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    cx z = raw[i];
    double spread = 0.0;
    int members = 1;
    for (size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(raw[j] - z) < 2e-5) {
        spread = std::max(spread, std::abs(raw[j] - z));
        z = (z * static_cast<double>(members) + raw[j]) /
            static_cast<double>(members + 1);
        ++members;
        used[j] = true;
      }
    }
    if (std::abs(z) > 1.0 + boundary_tol) continue;
    double r = std::max(1e-7, 4.0 * spread);
    int mult = 0;
    for (; r <= 1e-2; r *= 4.0) {
      try {
        mult = zeros_inside_circle(p, z, r);
        break;
      } catch (const NearSingularError&) {
        continue;
      }
    }
    if (mult <= 0) continue;  // spurious cluster
    PolyRoot root;
    root.z = z;
    root.multiplicity = mult;
    root.on_boundary = std::abs(std::abs(z) - 1.0) <= boundary_tol;
    roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end(), [](const PolyRoot& a, const PolyRoot& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return roots;
}

}  // namespace crfolio
