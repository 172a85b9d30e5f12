#pragma once

#include <complex>
#include <numbers>

namespace fracmra {

/// |sin(alpha)| at or below this is treated as a delta-kernel angle.
inline constexpr double kAngleEpsilon = 1e-9;

enum class AngleKind {
  generic,
  identity,  // alpha = 0 (mod 2 pi)
  parity,    // alpha = pi (mod 2 pi)
};

/// Order of the fractional Fourier transform, in radians, with the
/// trigonometric quantities every kernel evaluation needs.
class AngleParam {
 public:
  explicit AngleParam(double alpha = std::numbers::pi / 2);

  double alpha() const noexcept { return alpha_; }
  AngleKind kind() const noexcept { return kind_; }
  bool generic() const noexcept { return kind_ == AngleKind::generic; }

  double sin_alpha() const noexcept { return sin_; }
  double cot_alpha() const noexcept { return cot_; }
  double csc_alpha() const noexcept { return csc_; }

  /// Kernel constant sqrt((1 - i cot alpha) / 2 pi), principal branch.
  /// Zero for non-generic angles.
  std::complex<double> c_alpha() const noexcept { return c_alpha_; }

  /// alpha = rho * pi / 2.
  double rho() const noexcept { return alpha_ / (std::numbers::pi / 2); }

  /// Lattice period 2 pi |sin alpha| of the fractional frequency axis.
  double period() const noexcept;

  /// 1 / (2 pi |sin alpha|): the value of the lattice sum of |Theta|^2 for
  /// an orthonormal generator. Normalized profiles are divided by it.
  double normalization() const noexcept;

  /// |C_alpha| = (2 pi |sin alpha|)^(-1/2): the limit of |Theta(2^-j u)|
  /// for a scaling function.
  double limit_constant() const noexcept;

 private:
  double alpha_;
  AngleKind kind_;
  double sin_;
  double cot_;
  double csc_;
  std::complex<double> c_alpha_;
};

}  // namespace fracmra
