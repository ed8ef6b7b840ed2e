#include "crfolio/interp.hpp"

#include <cmath>

namespace crfolio {

ParamInterp ParamInterp::periodic(const std::vector<cx>& node_values) {
  const int n = static_cast<int>(node_values.size());
  CircleSamples samples{PeriodicGrid(n), node_values};
  FourierSpectrum spec = fourier_coeffs(samples);
  ParamInterp out;
  out.periodic_ = true;
  out.fourier_ = spec.coeff;
  return out;
}

ParamInterp ParamInterp::spline(const std::vector<cx>& node_values) {
  const int n = static_cast<int>(node_values.size());
  if (n < 2) throw ConfigError("spline: need at least 2 nodes");
  ParamInterp out;
  out.y_ = node_values;
  out.y2_.assign(n, cx{0.0});
  if (n > 2) {
    // Natural cubic spline on a uniform grid: tridiagonal solve for y''.
    std::vector<cx> u(n, cx{0.0});
    std::vector<double> diag(n, 0.0);
    const double h = 1.0 / (n - 1);
    for (int i = 1; i < n - 1; ++i) {
      const double sig = 0.5;
      const double p = sig * diag[i - 1] + 2.0;
      diag[i] = (sig - 1.0) / p;
      const cx rhs =
          (node_values[i + 1] - 2.0 * node_values[i] + node_values[i - 1]) *
          (3.0 / (h * h));
      u[i] = (rhs - sig * u[i - 1]) / p;
    }
    for (int i = n - 2; i >= 1; --i) out.y2_[i] = diag[i] * out.y2_[i + 1] + u[i];
  }
  return out;
}

cx ParamInterp::value(double t) const {
  if (periodic_) {
    const int n = static_cast<int>(fourier_.size());
    cx acc{0.0};
    for (int k = -n / 2; k < n / 2; ++k)
      acc += fourier_[k + n / 2] * std::polar(1.0, k * t);
    return acc;
  }
  const int n = static_cast<int>(y_.size());
  const double h = 1.0 / (n - 1);
  int i = std::min(std::max(static_cast<int>(std::floor(t / h)), 0), n - 2);
  const double a = (h * (i + 1) - t) / h;
  const double b = 1.0 - a;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * y2_[i] + (b * b * b - b) * y2_[i + 1]) * (h * h) /
             6.0;
}

cx ParamInterp::deriv(double t) const {
  if (periodic_) {
    const int n = static_cast<int>(fourier_.size());
    cx acc{0.0};
    for (int k = -n / 2 + 1; k < n / 2; ++k)
      acc += cx(0.0, k) * fourier_[k + n / 2] * std::polar(1.0, k * t);
    return acc;
  }
  const int n = static_cast<int>(y_.size());
  const double h = 1.0 / (n - 1);
  int i = std::min(std::max(static_cast<int>(std::floor(t / h)), 0), n - 2);
  const double a = (h * (i + 1) - t) / h;
  const double b = 1.0 - a;
  return (y_[i + 1] - y_[i]) / h +
         (-(3.0 * a * a - 1.0) * y2_[i] + (3.0 * b * b - 1.0) * y2_[i + 1]) *
             h / 6.0;
}

std::vector<cx> fd4_derivative(const std::vector<cx>& values, double h,
                               bool periodic) {
  const int n = static_cast<int>(values.size());
  if (n < 5) throw ConfigError("fd4_derivative: need at least 5 nodes");
  std::vector<cx> d(n);
  auto at = [&](int i) -> cx {
    if (periodic) return values[((i % n) + n) % n];
    return values[i];
  };
  for (int i = 0; i < n; ++i) {
    if (periodic || (i >= 2 && i <= n - 3)) {
      d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) /
             (12.0 * h);
    } else if (i == 0) {
      d[i] = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) -
              3.0 * at(4)) /
             (12.0 * h);
    } else if (i == 1) {
      d[i] = (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) +
              at(4)) /
             (12.0 * h);
    } else if (i == n - 2) {
      d[i] = (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) +
              6.0 * at(n - 4) - at(n - 5)) /
             (12.0 * h);
    } else {
      d[i] = (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) -
              16.0 * at(n - 4) + 3.0 * at(n - 5)) /
             (12.0 * h);
    }
  }
  return d;
}

}  // namespace crfolio
