#include "fracmra/grid.hpp"

#include <cmath>
#include <numbers>

#include "fracmra/errors.hpp"

namespace fracmra {

UniformGrid::UniformGrid(double start, double step, std::size_t count)
    : start_(start), step_(step), count_(count) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
    throw SpecError("grid step must be positive and finite");
  }
  if (count < 2) throw SpecError("grid needs at least two points");
}

UniformGrid UniformGrid::centered(double half_width, std::size_t n) {
  if (n < 2) throw SpecError("grid needs at least two points");
  return {-half_width, 2.0 * half_width / static_cast<double>(n), n};
}

UniformGrid UniformGrid::periodic(double start, double period, std::size_t n) {
  if (n < 2) throw SpecError("grid needs at least two points");
  return {start, period / static_cast<double>(n), n};
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> p(count_);
  for (std::size_t i = 0; i < count_; ++i) p[i] = at(i);
  return p;
}

namespace {

void require_finite(const std::vector<Complex>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw SpecError("sample values must be finite");
    }
  }
}

}  // namespace

SampledSignal::SampledSignal(UniformGrid g, std::vector<Complex> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.count()) throw SpecError("signal length does not match its grid");
  require_finite(values);
}

SpectrumTable::SpectrumTable(UniformGrid g, std::vector<Complex> v, AngleParam a)
    : grid(g), values(std::move(v)), alpha(a) {
  if (values.size() != grid.count()) throw SpecError("spectrum length does not match its grid");
}

bool SpectrumTable::truncated() const {
  for (const auto& d : diagnostics) {
    if (d.starts_with("TruncationWarning")) return true;
  }
  return false;
}

double l2_norm(const UniformGrid& grid, const std::vector<Complex>& values) {
  double sum = 0.0;
  for (const auto& z : values) sum += std::norm(z);
  return std::sqrt(sum * grid.step());
}

SampledSignal as_signal(const SpectrumTable& table) {
  SampledSignal s(table.grid, table.values);
  s.diagnostics = table.diagnostics;
  return s;
}

namespace {

double sinc_pi(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (std::numbers::pi * x) * (std::numbers::pi * x) / 6.0;
  return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
}

}  // namespace

Complex interpolate_bandlimited(const SampledSignal& signal, double t) {
  const double x = (t - signal.grid.start()) / signal.grid.step();
  Complex sum = 0.0;
  for (std::size_t n = 0; n < signal.values.size(); ++n) {
    sum += signal.values[n] * sinc_pi(x - static_cast<double>(n));
  }
  return sum;
}

Complex interpolate_linear(const SampledSignal& signal, double t) {
  const double x = (t - signal.grid.start()) / signal.grid.step();
  if (x < 0.0 || x > static_cast<double>(signal.values.size() - 1)) return 0.0;
  const auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= signal.values.size()) return signal.values.back();
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * signal.values[i] + w * signal.values[i + 1];
}

SampledSignal resample_bandlimited(const SampledSignal& signal, const UniformGrid& target) {
  if (target == signal.grid) return signal;
  std::vector<Complex> out(target.count());
  for (std::size_t i = 0; i < target.count(); ++i) {
    out[i] = interpolate_bandlimited(signal, target.at(i));
  }
  return {target, std::move(out)};
}

}  // namespace fracmra
