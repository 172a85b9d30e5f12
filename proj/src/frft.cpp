#include "fracmra/frft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracmra/chirp_z.hpp"
#include "fracmra/errors.hpp"

namespace fracmra {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double theta) { return std::polar(1.0, std::remainder(theta, kTwoPi)); }

std::vector<double> trapezoid_weights(const UniformGrid& grid) {
  std::vector<double> w(grid.count(), grid.step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

SpectrumTable special_angle(const SampledSignal& f, const AngleParam& alpha) {
  if (alpha.kind() == AngleKind::identity) {
    SpectrumTable t(f.grid, f.values, alpha);
    t.diagnostics = f.diagnostics;
    return t;
  }
  UniformGrid reflected(-f.grid.back(), f.grid.step(), f.grid.count());
  std::vector<Complex> v(f.values.rbegin(), f.values.rend());
  SpectrumTable t(reflected, std::move(v), alpha);
  t.diagnostics = f.diagnostics;
  return t;
}

void note_truncation(const SampledSignal& f, Diagnostics& diag) {
  if (edge_truncated(f.grid, f.values)) {
    diag.emplace_back("TruncationWarning: input does not decay at the grid edges");
  }
}

void note_output_truncation(const SpectrumTable& table, Diagnostics& diag) {
  if (edge_truncated(table.grid, table.values)) {
    diag.emplace_back("TruncationWarning: spectrum does not decay at the output grid edges");
  }
}

}  // namespace

Complex kernel_eval(double t, double u, const AngleParam& alpha) {
  if (!alpha.generic()) throw SpecialAngleError("kernel is a delta distribution at this angle");
  const double theta =
      0.5 * (t * t + u * u) * alpha.cot_alpha() - t * u * alpha.csc_alpha();
  return alpha.c_alpha() * unit_phase(theta);
}

bool edge_truncated(const UniformGrid& grid, const std::vector<Complex>& values) {
  double peak = 0.0;
  for (const auto& z : values) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return false;
  const std::size_t edge = std::max<std::size_t>(1, grid.count() / 100);
  const double limit = kEdgeTolerance * peak;
  for (std::size_t i = 0; i < edge; ++i) {
    if (std::abs(values[i]) > limit || std::abs(values[values.size() - 1 - i]) > limit) {
      return true;
    }
  }
  return false;
}

SpectrumTable frft_quadrature(const SampledSignal& f, const AngleParam& alpha,
                              const UniformGrid& out) {
  if (!alpha.generic()) return special_angle(f, alpha);
  const auto w = trapezoid_weights(f.grid);
  std::vector<Complex> values(out.count());
  for (std::size_t m = 0; m < out.count(); ++m) {
    const double u = out.at(m);
    Complex acc = 0.0;
    for (std::size_t n = 0; n < f.values.size(); ++n) {
      acc += w[n] * f.values[n] * kernel_eval(f.grid.at(n), u, alpha);
    }
    values[m] = acc;
  }
  SpectrumTable table(out, std::move(values), alpha);
  note_truncation(f, table.diagnostics);
  note_output_truncation(table, table.diagnostics);
  return table;
}

SpectrumTable frft_fast(const SampledSignal& f, const AngleParam& alpha) {
  return frft_fast(f, alpha, f.grid);
}

SpectrumTable frft_fast(const SampledSignal& f, const AngleParam& alpha, const UniformGrid& out) {
  if (!alpha.generic()) return special_angle(f, alpha);

  const double cot = alpha.cot_alpha();
  const double csc = alpha.csc_alpha();
  const double h = f.grid.step();
  const double t_max = std::max(std::abs(f.grid.start()), std::abs(f.grid.back()));
  const double u_max = std::max(std::abs(out.start()), std::abs(out.back()));
  const double chirp_step = t_max * std::abs(cot) * h;
  const double cross_step = u_max * std::abs(csc) * h;
  if (chirp_step > std::numbers::pi || cross_step > std::numbers::pi) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "grid step " << h << " aliases the chirp at alpha " << alpha.alpha()
        << " (phase increment " << std::max(chirp_step, cross_step) << " rad per sample)";
    throw AliasError(alpha.alpha(), h, msg.str());
  }

  const auto w = trapezoid_weights(f.grid);
  std::vector<Complex> x(f.values.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double t = f.grid.at(n);
    x[n] = w[n] * f.values[n] * unit_phase(0.5 * t * t * cot);
  }
  auto y = scaled_fourier_sum(x, f.grid.start(), h, out.start() * csc, out.step() * csc,
                              out.count());
  for (std::size_t m = 0; m < y.size(); ++m) {
    const double u = out.at(m);
    y[m] *= alpha.c_alpha() * unit_phase(0.5 * u * u * cot);
  }
  SpectrumTable table(out, std::move(y), alpha);
  note_truncation(f, table.diagnostics);
  note_output_truncation(table, table.diagnostics);
  return table;
}

SampledSignal ifrft(const SpectrumTable& spectrum, const AngleParam& alpha) {
  const AngleParam inverse(-alpha.alpha());
  const auto back = frft_fast(as_signal(spectrum), inverse);
  SampledSignal s(back.grid, back.values);
  s.diagnostics = back.diagnostics;
  return s;
}

}  // namespace fracmra
