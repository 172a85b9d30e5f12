#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "fracmra/angle.hpp"

namespace fracmra {

using Complex = std::complex<double>;
using Diagnostics = std::vector<std::string>;

/// start + i * step for i in [0, count).
class UniformGrid {
 public:
  UniformGrid(double start, double step, std::size_t count);

  /// n points on [-half_width, half_width) with 0 on the grid for even n.
  static UniformGrid centered(double half_width, std::size_t n);
  /// n points covering one period [start, start + period).
  static UniformGrid periodic(double start, double period, std::size_t n);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double at(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  double back() const noexcept { return at(count_ - 1); }
  std::vector<double> points() const;

  bool operator==(const UniformGrid&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

struct SampledSignal {
  UniformGrid grid;
  std::vector<Complex> values;
  Diagnostics diagnostics;

  SampledSignal(UniformGrid g, std::vector<Complex> v);
};

/// Samples of a fractional spectrum (F_alpha f or Theta_alpha) on the u axis.
struct SpectrumTable {
  UniformGrid grid;
  std::vector<Complex> values;
  AngleParam alpha;
  Diagnostics diagnostics;

  SpectrumTable(UniformGrid g, std::vector<Complex> v, AngleParam a);

  bool truncated() const;
};

/// Riemann-sum L2 norm, sqrt(step * sum |v|^2).
double l2_norm(const UniformGrid& grid, const std::vector<Complex>& values);
inline double l2_norm(const SampledSignal& s) { return l2_norm(s.grid, s.values); }
inline double l2_norm(const SpectrumTable& s) { return l2_norm(s.grid, s.values); }

/// Reinterpret a spectrum as a signal on its own grid (for composing transforms).
SampledSignal as_signal(const SpectrumTable& table);

/// Whittaker-Shannon interpolation of `signal` at arbitrary points.
Complex interpolate_bandlimited(const SampledSignal& signal, double t);
Complex interpolate_linear(const SampledSignal& signal, double t);
SampledSignal resample_bandlimited(const SampledSignal& signal, const UniformGrid& target);

}  // namespace fracmra
