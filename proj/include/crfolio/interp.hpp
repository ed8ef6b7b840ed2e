#pragma once

// Complex-valued functions of one real parameter, reconstructed from
// equispaced node values: trigonometric interpolation on the circle,
// natural cubic splines on [0, 1].

#include <vector>

#include "crfolio/core.hpp"

namespace crfolio {

class ParamInterp {
 public:
  // Node values at t_i = 2*pi*i/n, n even. Evaluation is 2*pi-periodic.
  static ParamInterp periodic(const std::vector<cx>& node_values);
  // Node values at t_i = i/(n-1) on [0, 1].
  static ParamInterp spline(const std::vector<cx>& node_values);

  cx value(double t) const;
  cx deriv(double t) const;

 private:
  ParamInterp() = default;
  bool periodic_ = false;
  // periodic: Fourier coefficients, index k + n/2
  std::vector<cx> fourier_;
  // spline: node values and second derivatives
  std::vector<cx> y_, y2_;
};

// 4th-order finite-difference derivative of tabulated values on a uniform
// grid with spacing h; one-sided stencils at the ends.
std::vector<cx> fd4_derivative(const std::vector<cx>& values, double h,
                               bool periodic);

}  // namespace crfolio
