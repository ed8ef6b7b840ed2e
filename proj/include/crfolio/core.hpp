#pragma once

// Complex spectral and quadrature primitives on periodic grids and closed
// curves. Everything downstream (families, extensions, Jacobians, winding
// machinery) is built on these.

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace crfolio {

using cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Configuration / precondition violations (bad grids, mismatched lengths).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation outside the admissible domain (|zeta| > 1, t off the chart).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A curve passes too close to the probe point for winding to be trusted.
struct NearSingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accumulated argument did not land near a multiple of 2*pi.
struct NonClosedCurveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// N equispaced angles psi_i = 2*pi*i/N on [0, 2*pi). N even, N >= 8.
struct PeriodicGrid {
  int size;

  explicit PeriodicGrid(int n);
  double node(int i) const { return kTwoPi * i / size; }
};

struct CircleSamples {
  PeriodicGrid grid;
  std::vector<cx> values;

  CircleSamples(PeriodicGrid g, std::vector<cx> v);
};

// Fourier coefficients c_k for k in [-N/2, N/2), stored at index k + N/2.
struct FourierSpectrum {
  int grid_size = 0;
  std::vector<cx> coeff;

  explicit FourierSpectrum(int n) : grid_size(n), coeff(n, cx{0.0}) {}
  cx c(int k) const { return coeff[k + grid_size / 2]; }
  cx& c(int k) { return coeff[k + grid_size / 2]; }
};

// c_k = (1/N) sum_i values_i e^{-ik psi_i}; exact discrete inversion holds.
FourierSpectrum fourier_coeffs(const CircleSamples& samples);

// Inverse of fourier_coeffs (node values of the trigonometric interpolant).
CircleSamples inverse_transform(const FourierSpectrum& spectrum);

// Spectrum of the psi-derivative: c_k -> ik c_k, Nyquist mode zeroed.
FourierSpectrum spectral_derivative(const FourierSpectrum& spectrum);

// Maximum adjacent-sample distance of a closed curve.
double curve_mesh(std::span<const cx> curve);

// Total branch-continuous argument increment of (curve_i - b) around the
// closed curve, in radians. No integrality check.
double winding_angle(std::span<const cx> curve, cx b);

// Integer winding index of the closed sampled curve about b. Throws
// NearSingularError when the curve comes within 10 meshes of b, and
// NonClosedCurveError when the angle is not within 0.05 turns of an integer.
int winding_number(std::span<const cx> curve, cx b);

// Sum_{k=0}^{N/2-1} c_k zeta^k by Horner; requires |zeta| <= 1.
cx taylor_eval(const FourierSpectrum& spectrum, cx zeta);

// Sum values_i dz_i: the periodic rectangle rule on closed curves,
// spectrally accurate for smooth periodic integrands.
cx line_integral(std::span<const cx> values, std::span<const cx> dz);

}  // namespace crfolio
