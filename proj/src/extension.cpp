#include "crfolio/extension.hpp"

#include <cmath>
#include <sstream>

namespace crfolio {

namespace {

std::vector<cx> boundary_trace(const BoundaryFunction& f,
                               const DiscFamily& family, int node, int n) {
  std::vector<cx> out(n);
  for (int i = 0; i < n; ++i) {
    cx zeta = std::polar(1.0, kTwoPi * i / n);
    cx v = f.value(family.eval_node(zeta, node));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "function singular on the swept region at zeta=" << zeta
         << " node=" << node;
      throw DomainError(os.str());
    }
    out[i] = v;
  }
  return out;
}

}  // namespace

ExtensionField analyze(const BoundaryFunction& f, const DiscFamily& family,
                       int circle_n) {
  if (f.arity != family.ambient_dim)
    throw ConfigError("function arity does not match the family dimension");
  ExtensionField ext;
  ext.family = family;
  ext.circle_n = circle_n;

  const int nodes = family.params.node_count();
  std::vector<Poly> table(nodes);
  ext.residual_t.resize(nodes);
  double sumsq = 0.0;
  long count = 0;
  for (int node = 0; node < nodes; ++node) {
    auto samples = boundary_trace(f, family, node, circle_n);
    for (const cx& s : samples) sumsq += std::norm(s);
    count += circle_n;
    FourierSpectrum spec =
        fourier_coeffs(CircleSamples(PeriodicGrid(circle_n), samples));
    double neg = 0.0;
    for (int k = -circle_n / 2; k < 0; ++k) neg += std::norm(spec.c(k));
    ext.residual_t[node] = std::sqrt(neg);
    Poly p(circle_n / 2);
    for (int k = 0; k < circle_n / 2; ++k) p[k] = spec.c(k);
    table[node] = std::move(p);
  }
  ext.residual = 0.0;
  for (double r : ext.residual_t) ext.residual = std::max(ext.residual, r);
  ext.boundary_rms = std::sqrt(sumsq / std::max<long>(count, 1));
  ext.tolerance = 1e-8 * std::max(ext.boundary_rms, 1e-300);
  ext.field = CoeffField(family.params, std::move(table));
  return ext;
}

static void require_extendible(const ExtensionField& ext) {
  if (!ext.extendible()) {
    std::ostringstream os;
    os << "no extension: residual " << ext.residual << " above tolerance "
       << ext.tolerance;
    throw DomainError(os.str());
  }
}

cx eval_extension(const ExtensionField& ext, cx zeta, double t) {
  require_extendible(ext);
  return ext.field.value(zeta, t);
}

cx eval_extension_dzeta(const ExtensionField& ext, cx zeta, double t) {
  require_extendible(ext);
  return ext.field.dzeta(zeta, t);
}

cx eval_extension_dt(const ExtensionField& ext, cx zeta, double t) {
  require_extendible(ext);
  return ext.field.dt(zeta, t);
}

double moment_test(const BoundaryFunction& f, const DiscFamily& family,
                   int max_power, int circle_n) {
  if (max_power < 0) throw ConfigError("moment power must be nonnegative");
  const int nodes = family.params.node_count();
  const int n = family.ambient_dim;
  double worst = 0.0;
  for (int node = 0; node < nodes; ++node) {
    auto fvals = boundary_trace(f, family, node, circle_n);
    // boundary points and tangents for each component
    std::vector<std::vector<cx>> z(n), dz(n);
    for (int c = 0; c < n; ++c) {
      z[c].resize(circle_n);
      dz[c].resize(circle_n);
      for (int i = 0; i < circle_n; ++i) {
        cx zeta = std::polar(1.0, kTwoPi * i / circle_n);
        z[c][i] = family.comp[c].value_node(zeta, node);
        dz[c][i] = family.comp[c].dpsi_node(zeta, node);
      }
    }
    // monomials z^alpha with |alpha| <= max_power
    std::vector<std::array<int, 2>> alphas;
    for (int a1 = 0; a1 <= max_power; ++a1)
      for (int a2 = 0; a2 <= (n == 2 ? max_power - a1 : 0); ++a2)
        alphas.push_back({a1, a2});
    for (const auto& alpha : alphas)
      for (int j = 0; j < n; ++j) {
        cx acc(0.0);
        for (int i = 0; i < circle_n; ++i) {
          cx mono = std::pow(z[0][i], alpha[0]);
          if (n == 2) mono *= std::pow(z[1][i], alpha[1]);
          acc += fvals[i] * mono * dz[j][i];
        }
        acc *= kTwoPi / circle_n;
        worst = std::max(worst, std::abs(acc));
      }
  }
  return worst;
}

}  // namespace crfolio
