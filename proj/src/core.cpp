#include "crfolio/core.hpp"

#include <cmath>

namespace crfolio {

PeriodicGrid::PeriodicGrid(int n) : size(n) {
  if (n < 8) throw ConfigError("grid too small: N must be >= 8");
  if (n % 2 != 0) throw ConfigError("grid size must be even");
}

CircleSamples::CircleSamples(PeriodicGrid g, std::vector<cx> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.size)
    throw ConfigError("sample count does not match grid size");
}

FourierSpectrum fourier_coeffs(const CircleSamples& samples) {
  const int n = samples.grid.size;
  FourierSpectrum spec(n);
  // Plain O(N^2) transform; N stays at desk scale.
  for (int k = -n / 2; k < n / 2; ++k) {
    cx acc{0.0};
    for (int i = 0; i < n; ++i) {
      const double phase = -k * samples.grid.node(i);
      acc += samples.values[i] * std::polar(1.0, phase);
    }
    spec.c(k) = acc / static_cast<double>(n);
  }
  return spec;
}

CircleSamples inverse_transform(const FourierSpectrum& spectrum) {
  const int n = spectrum.grid_size;
  PeriodicGrid grid(n);
  std::vector<cx> values(n);
  for (int i = 0; i < n; ++i) {
    cx acc{0.0};
    for (int k = -n / 2; k < n / 2; ++k)
      acc += spectrum.c(k) * std::polar(1.0, k * grid.node(i));
    values[i] = acc;
  }
  return CircleSamples(grid, std::move(values));
}

FourierSpectrum spectral_derivative(const FourierSpectrum& spectrum) {
  const int n = spectrum.grid_size;
  FourierSpectrum out(n);
  for (int k = -n / 2; k < n / 2; ++k) out.c(k) = cx(0.0, k) * spectrum.c(k);
  out.c(-n / 2) = 0.0;  // Nyquist mode: even-grid convention
  return out;
}

double curve_mesh(std::span<const cx> curve) {
  const size_t n = curve.size();
  double mesh = 0.0;
  for (size_t i = 0; i < n; ++i)
    mesh = std::max(mesh, std::abs(curve[(i + 1) % n] - curve[i]));
  return mesh;
}

double winding_angle(std::span<const cx> curve, cx b) {
  const size_t n = curve.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const cx u = curve[i] - b;
    const cx v = curve[(i + 1) % n] - b;
    total += std::arg(v / u);
  }
  return total;
}

int winding_number(std::span<const cx> curve, cx b) {
  if (curve.size() < 8) throw ConfigError("winding: need at least 8 samples");
  const double mesh = curve_mesh(curve);
  double min_dist = std::numeric_limits<double>::max();
  for (const cx& z : curve) min_dist = std::min(min_dist, std::abs(z - b));
  if (min_dist <= 10.0 * mesh)
    throw NearSingularError("near-singular winding: curve passes too near b");
  const double turns = winding_angle(curve, b) / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.05)
    throw NonClosedCurveError("non-closed curve: accumulated argument " +
                              std::to_string(turns) + " turns");
  return static_cast<int>(rounded);
}

cx taylor_eval(const FourierSpectrum& spectrum, cx zeta) {
  if (std::abs(zeta) > 1.0 + 1e-12)
    throw DomainError("taylor_eval: |zeta| > 1");
  const int top = spectrum.grid_size / 2 - 1;
  cx acc{0.0};
  for (int k = top; k >= 0; --k) acc = acc * zeta + spectrum.c(k);
  return acc;
}

cx line_integral(std::span<const cx> values, std::span<const cx> dz) {
  if (values.size() != dz.size())
    throw ConfigError("line_integral: length mismatch");
  if (values.size() < 8) throw ConfigError("line_integral: need >= 8 samples");
  cx acc{0.0};
  for (size_t i = 0; i < values.size(); ++i) acc += values[i] * dz[i];
  return acc;
}

}  // namespace crfolio
