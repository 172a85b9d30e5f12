#include "fracmra/catalog.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "fracmra/chirp_z.hpp"
#include "fracmra/errors.hpp"
#include "fracmra/frft.hpp"
#include "fracmra/quadrature.hpp"
#include "interp.hpp"

namespace fracmra {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kChirpMatch = 1e-12;
constexpr double kSupportCut = 1e-10;
constexpr Complex kI{0.0, 1.0};

Complex unit_phase(double theta) { return std::polar(1.0, std::remainder(theta, kTwoPi)); }

double sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// (1 - exp(-i w)) / (i w), the transform of the indicator of [0, 1).
Complex box_spectrum(double w) { return unit_phase(-0.5 * w) * sinc(0.5 * w); }

// Cox-de Boor recursion; every step is a convex combination.
double bspline_value(int m, double t) {
  if (t < 0.0 || t >= m) return 0.0;
  std::array<double, 17> n{};
  const int cell = static_cast<int>(std::floor(t));
  n[cell] = 1.0;
  for (int r = 2; r <= m; ++r) {
    for (int i = std::max(0, cell - r + 1); i <= std::min(cell, m - r); ++i) {
      n[i] = ((t - i) * n[i] + (i + r - t) * n[i + 1]) / (r - 1);
    }
  }
  return n[0];
}

FunctionDescriptor base(FunctionKind kind, std::string name, const AngleParam& alpha,
                        bool demodulated, Prototype proto) {
  FunctionDescriptor d;
  d.kind = kind;
  d.name = std::move(name);
  d.alpha_built_for = alpha;
  d.demodulated = demodulated;
  d.chirp_rate = (demodulated && alpha.generic()) ? alpha.cot_alpha() : 0.0;
  if (std::abs(d.chirp_rate) < 1e-14) d.chirp_rate = 0.0;
  d.prototype = std::make_shared<const Prototype>(std::move(proto));
  return d;
}

Prototype haar_proto() {
  Prototype p;
  p.value = [](double t) -> Complex { return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0; };
  p.spectrum = box_spectrum;
  p.support_lo = 0.0;
  p.support_hi = 1.0;
  return p;
}

Prototype shannon_proto() {
  Prototype p;
  p.value = [](double t) -> Complex { return sinc(kPi * t); };
  p.spectrum = [](double w) -> Complex { return (w >= -kPi && w < kPi) ? 1.0 : 0.0; };
  p.band = kPi;
  return p;
}

Prototype bspline_proto(int m) {
  Prototype p;
  p.value = [m](double t) -> Complex { return bspline_value(m, t); };
  p.spectrum = [m](double w) -> Complex {
    const Complex b = box_spectrum(w);
    Complex acc = b;
    for (int k = 1; k < m; ++k) acc *= b;
    return acc;
  };
  p.support_lo = 0.0;
  p.support_hi = m;
  for (int k = 1; k < m; ++k) p.knots.push_back(k);
  return p;
}

Prototype haar_wavelet_proto() {
  Prototype p;
  p.value = [](double t) -> Complex {
    if (t >= 0.0 && t < 0.5) return 1.0;
    if (t >= 0.5 && t < 1.0) return -1.0;
    return 0.0;
  };
  p.spectrum = [](double w) -> Complex {
    // (1 - exp(-i w / 2))^2 / (i w)
    const double s = std::sin(0.25 * w);
    if (std::abs(w) < 1e-8) return kI * (0.25 * w);
    return kI * unit_phase(-0.5 * w) * (4.0 * s * s / w);
  };
  p.support_lo = 0.0;
  p.support_hi = 1.0;
  p.knots = {0.5};
  return p;
}

Prototype shannon_wavelet_proto() {
  Prototype p;
  p.value = [](double t) -> Complex {
    const double s = t - 0.5;
    if (std::abs(s) < 1e-10) return -1.0;
    return -(std::sin(kTwoPi * s) - std::sin(kPi * s)) / (kPi * s);
  };
  p.spectrum = [](double w) -> Complex {
    const bool inside = (w >= kPi && w < kTwoPi) || (w >= -kTwoPi && w < -kPi);
    return inside ? -unit_phase(-0.5 * w) : Complex{};
  };
  p.band = kTwoPi;
  return p;
}

Prototype mexican_hat_proto() {
  Prototype p;
  p.value = [](double t) -> Complex { return (1.0 - t * t) * std::exp(-0.5 * t * t); };
  p.spectrum = [](double w) -> Complex {
    return std::sqrt(kTwoPi) * w * w * std::exp(-0.5 * w * w);
  };
  return p;
}

Prototype gaussian_proto() {
  Prototype p;
  p.value = [](double t) -> Complex { return std::exp(-0.5 * t * t); };
  p.spectrum = [](double w) -> Complex { return std::sqrt(kTwoPi) * std::exp(-0.5 * w * w); };
  return p;
}

std::optional<int> bspline_order(const std::string& name) {
  if (!name.starts_with("bspline")) return std::nullopt;
  int m = 0;
  const char* first = name.data() + 7;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, m);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return m;
}

// g(t) = (1 / 2 pi) int g_hat(w) exp(i w t) dw for spectral-only kinds.
Complex inverse_spectrum(const Prototype& p, double t) {
  const double band = std::isfinite(p.band) ? p.band : 2048.0;
  const auto breaks = quad::uniform_breaks(-band, band, 0.5);
  return quad::panels<Complex>(
             [&](double w) { return p.spectrum(w) * unit_phase(w * t); }, breaks) /
         kTwoPi;
}

// Effective support of a non-compact, pointwise-known prototype.
std::pair<double, double> effective_support(const FunctionDescriptor& phi) {
  const auto& p = *phi.prototype;
  if (p.compact()) return {p.support_lo, p.support_hi};
  double peak = 0.0;
  for (double t = -4.0; t <= 4.0; t += 0.125) peak = std::max(peak, std::abs(p.value(t)));
  const double cut = kSupportCut * std::max(peak, 1e-300);
  auto reach = [&](double dir) {
    double quiet_from = 0.0;
    int quiet = 0;
    for (double r = 1.0; r <= 256.0; r += 0.5) {
      if (std::abs(p.value(dir * r)) < cut) {
        if (quiet++ == 0) quiet_from = r;
        if (quiet >= 8) return quiet_from;
      } else {
        quiet = 0;
      }
    }
    return 256.0;
  };
  return {-reach(-1.0), reach(1.0)};
}

}  // namespace

FunctionDescriptor make_scaling(const std::string& name, const AngleParam& alpha) {
  if (!alpha.generic()) throw SpecialAngleError("scaling functions need a generic angle");
  if (name == "haar") {
    auto d = base(FunctionKind::haar, "haar", alpha, true, haar_proto());
    return d;
  }
  if (name == "shannon") return base(FunctionKind::shannon, "shannon", alpha, true, shannon_proto());
  if (auto m = bspline_order(name)) {
    if (*m < 2 || *m > 16) throw CatalogError("B-spline order must lie in [2, 16]: " + name);
    auto d = base(FunctionKind::bspline, name, alpha, true, bspline_proto(*m));
    d.order = *m;
    return d;
  }
  throw CatalogError("unknown scaling function: " + name);
}

FunctionDescriptor make_wavelet(const std::string& name, const AngleParam& alpha) {
  if (name == "haar") return base(FunctionKind::haar_wavelet, "haar", alpha, false, haar_wavelet_proto());
  if (name == "shannon") {
    return base(FunctionKind::shannon_wavelet, "shannon", alpha, false, shannon_wavelet_proto());
  }
  if (name == "mexican_hat") {
    return base(FunctionKind::mexican_hat, "mexican_hat", alpha, false, mexican_hat_proto());
  }
  if (name == "gaussian") return base(FunctionKind::gaussian, "gaussian", alpha, false, gaussian_proto());
  throw CatalogError("unknown wavelet: " + name);
}

FunctionDescriptor make_filter_defined(const Filter& h, const AngleParam& alpha) {
  if (!alpha.generic()) throw SpecialAngleError("filter-defined functions need a generic angle");
  if (h.taps.empty()) throw CatalogError("empty refinement filter");
  for (const auto& z : h.taps) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw CatalogError("refinement filter has non-finite taps");
    }
  }
  const Filter classical = to_classical_filter(h, alpha);
  if (std::abs(filter_symbol(classical, 0.0) - 1.0) > 1e-8) {
    throw CatalogError("refinement filter must satisfy sum h_cl[n] = sqrt(2)");
  }
  auto m0 = symbol_function(classical);
  Prototype p;
  p.spectrum = [m0](double w) {
    Complex prod = 1.0;
    for (int j = 1; j < 80 && std::abs(w) >= 1e-13; ++j) {
      w *= 0.5;
      prod *= m0(w);
      if (prod == Complex{}) break;
    }
    return prod;
  };
  p.support_lo = classical.first_index;
  p.support_hi = classical.last_index();
  auto d = base(FunctionKind::filter_defined, "filter", alpha, true, std::move(p));
  d.filter = classical.taps;
  d.filter_first = classical.first_index;
  return d;
}

FunctionDescriptor make_sampled(const SampledSignal& samples, Interpolation interp,
                                const AngleParam& alpha) {
  double peak = 0.0;
  for (const auto& z : samples.values) peak = std::max(peak, std::abs(z));
  std::size_t lo = 0;
  std::size_t hi = samples.values.size() - 1;
  while (lo < hi && std::abs(samples.values[lo]) < kSupportCut * peak) ++lo;
  while (hi > lo && std::abs(samples.values[hi]) < kSupportCut * peak) --hi;

  Prototype p;
  auto shared = std::make_shared<const SampledSignal>(samples);
  if (interp == Interpolation::linear) {
    p.value = [shared](double t) { return interpolate_linear(*shared, t); };
  } else {
    p.value = [shared](double t) { return interpolate_bandlimited(*shared, t); };
  }
  p.support_lo = samples.grid.at(lo == 0 ? 0 : lo - 1);
  p.support_hi = samples.grid.at(std::min(hi + 1, samples.values.size() - 1));
  auto d = base(FunctionKind::sampled, "sampled", alpha, false, std::move(p));
  d.interpolation = interp;
  return d;
}

FunctionDescriptor make_spectral(std::string name, std::function<Complex(double)> spectrum,
                                 const AngleParam& alpha, double band) {
  Prototype p;
  p.spectrum = std::move(spectrum);
  p.band = band;
  return base(FunctionKind::spectral, std::move(name), alpha, true, std::move(p));
}

Complex eval_function(const FunctionDescriptor& phi, double t) {
  const auto& p = *phi.prototype;
  if (p.compact() && (t < p.support_lo || t > p.support_hi)) return 0.0;
  const Complex g = p.value ? p.value(t) : inverse_spectrum(p, t);
  if (phi.chirp_rate == 0.0) return phi.amplitude * g;
  return phi.amplitude * g * unit_phase(-0.5 * phi.chirp_rate * t * t);
}

SpectrumEvaluator::SpectrumEvaluator(const FunctionDescriptor& phi, const AngleParam& alpha)
    : alpha_(alpha), amplitude_(phi.amplitude), prototype_(phi.prototype) {
  if (!alpha.generic()) throw SpecialAngleError("fractional spectrum needs a generic angle");
  const double cot = std::abs(alpha.cot_alpha()) < 1e-14 ? 0.0 : alpha.cot_alpha();
  const double q = phi.chirp_rate - cot;
  if (std::abs(q) <= kChirpMatch && prototype_->spectrum) {
    analytic_ = true;
    band_ = prototype_->band;
    return;
  }
  if (!prototype_->value) {
    throw CatalogError("spectral descriptor '" + phi.name +
                       "' can only be transformed at the angle it was built for");
  }

  // R(w) = int A g(t) exp(-i q t^2 / 2) exp(-i w t) dt on a dense table,
  // stored with the support centre factored out.
  const auto [a, b] = effective_support(phi);
  const double center = 0.5 * (a + b);
  const double half = std::max(0.5, 0.5 * (b - a));
  const double omega_max = 4096.0;
  const double t_max = std::max(std::abs(a), std::abs(b));
  const double h_bound = kPi / (1.25 * omega_max + std::abs(q) * t_max);
  const auto n_t = static_cast<std::size_t>(std::ceil((b - a) / h_bound)) + 1;
  const double h = (b - a) / static_cast<double>(n_t - 1);
  std::vector<Complex> x(n_t);
  for (std::size_t n = 0; n < n_t; ++n) {
    const double t = a + static_cast<double>(n) * h;
    const double w = (n == 0 || n + 1 == n_t) ? 0.5 * h : h;
    x[n] = w * amplitude_ * prototype_->value(t) * unit_phase(-0.5 * q * t * t);
  }
  table_step_ = kPi / (32.0 * half);
  const auto n_w = static_cast<std::size_t>(std::ceil(2.0 * omega_max / table_step_)) + 1;
  table_start_ = -omega_max;
  table_ = scaled_fourier_sum(x, a - center, h, table_start_, table_step_, n_w);
  // Move the centre phase back in at evaluation time.
  center_ = center;
  diagnostics_.emplace_back("numeric spectrum: chirp-z table on |w| <= 4096");
}

Complex SpectrumEvaluator::reduced(double omega) const {
  if (analytic_) {
    if (omega >= band_ || omega < -band_) return 0.0;
    return amplitude_ * prototype_->spectrum(omega);
  }
  return unit_phase(-omega * center_) *
         detail::cubic_at(table_, table_start_, table_step_, omega);
}

Complex SpectrumEvaluator::theta(double u) const {
  return alpha_.c_alpha() * unit_phase(0.5 * u * u * alpha_.cot_alpha()) *
         reduced(u * alpha_.csc_alpha());
}

SpectrumTable frft_of_scaling(const FunctionDescriptor& phi, const AngleParam& alpha,
                              const UniformGrid& out) {
  SpectrumEvaluator eval(phi, alpha);
  if (eval.analytic()) {
    std::vector<Complex> v(out.count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval.theta(out.at(i));
    return {out, std::move(v), alpha};
  }
  const auto [a, b] = effective_support(phi);
  const double pad = 1.0;
  const double t_max = std::max(std::abs(a), std::abs(b)) + pad;
  const double u_max = std::max(std::abs(out.start()), std::abs(out.back()));
  const double bound =
      0.9 * kPi / std::max(u_max * std::abs(alpha.csc_alpha()), t_max * std::abs(alpha.cot_alpha()));
  const double h = std::exp2(std::floor(std::log2(std::min(bound, 0.05))));
  const double start = std::floor((a - pad) / h) * h;
  const auto n = static_cast<std::size_t>(std::ceil((b + pad - start) / h)) + 1;
  UniformGrid tg(start, h, n);
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = eval_function(phi, tg.at(i));
  return frft_fast(SampledSignal(tg, std::move(v)), alpha, out);
}

SampledSignal make_test_signal(const TestSignalSpec& spec, const UniformGrid& grid) {
  if (!(spec.scale > 0.0)) throw SpecError("test signal scale must be positive");
  const double nyquist = kPi / grid.step();
  std::vector<Complex> v(grid.count());
  auto window = [&](double t) {
    const double s = (t - spec.center) / spec.scale;
    return std::exp(-0.5 * s * s);
  };
  switch (spec.kind) {
    case TestSignalKind::gaussian:
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = window(grid.at(i));
      break;
    case TestSignalKind::chirp:
      if (std::abs(spec.rate) * std::max(std::abs(grid.start()), std::abs(grid.back())) >= nyquist) {
        throw SpecError("chirp rate exceeds the grid Nyquist frequency");
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = grid.at(i);
        v[i] = window(t) * unit_phase(0.5 * spec.rate * t * t);
      }
      break;
    case TestSignalKind::rectangle:
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = grid.at(i);
        v[i] = (t >= spec.lo && t < spec.hi) ? 1.0 : 0.0;
      }
      break;
    case TestSignalKind::hermite: {
      if (spec.order < 0) throw SpecError("Hermite order must be non-negative");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = (grid.at(i) - spec.center) / spec.scale;
        double h0 = 1.0, h1 = 2.0 * x;
        double hn = spec.order == 0 ? h0 : h1;
        for (int k = 1; k < spec.order; ++k) {
          hn = 2.0 * x * h1 - 2.0 * k * h0;
          h0 = h1;
          h1 = hn;
        }
        v[i] = hn * std::exp(-0.5 * x * x);
      }
      break;
    }
    case TestSignalKind::bandlimited_random: {
      if (spec.band_lo > spec.band_hi) throw SpecError("empty band");
      if (std::max(std::abs(spec.band_lo), std::abs(spec.band_hi)) >= nyquist) {
        throw SpecError("band exceeds the grid Nyquist frequency");
      }
      if (spec.tones < 1) throw SpecError("need at least one tone");
      std::mt19937_64 rng(spec.seed);
      // Explicit transforms keep the stream identical across standard libraries.
      auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
      auto normal = [&] {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
      };
      std::vector<double> freq(spec.tones);
      std::vector<Complex> amp(spec.tones);
      for (int m = 0; m < spec.tones; ++m) {
        freq[m] = spec.band_lo + (spec.band_hi - spec.band_lo) * uniform();
        const double re = normal();
        const double im = normal();
        amp[m] = Complex(re, im) / std::sqrt(2.0 * spec.tones);
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = grid.at(i);
        Complex acc = 0.0;
        for (int m = 0; m < spec.tones; ++m) acc += amp[m] * unit_phase(freq[m] * (t - spec.center));
        v[i] = window(t) * acc;
      }
      break;
    }
  }
  if (spec.demod_rate != 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double t = grid.at(i);
      v[i] *= unit_phase(-0.5 * spec.demod_rate * t * t);
    }
  }
  return {grid, std::move(v)};
}

Complex filter_symbol(const Filter& h, double omega) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < h.taps.size(); ++i) {
    acc += h.taps[i] * unit_phase(-(h.first_index + static_cast<double>(i)) * omega);
  }
  return acc / std::numbers::sqrt2;
}

std::function<Complex(double)> symbol_function(const Filter& h) {
  if (h.taps.size() <= 64) {
    return [h](double w) { return filter_symbol(h, w); };
  }
  const std::size_t len = std::max<std::size_t>(1u << 16, 16 * std::bit_ceil(h.taps.size()));
  std::vector<Complex> padded(len);
  std::copy(h.taps.begin(), h.taps.end(), padded.begin());
  auto table = std::make_shared<std::vector<Complex>>(dft(padded));
  for (auto& z : *table) z /= std::numbers::sqrt2;
  const double step = kTwoPi / static_cast<double>(len);
  const int first = h.first_index;
  return [table, step, first](double w) {
    return unit_phase(-first * w) * detail::periodic_cubic_at(*table, 0.0, step, w);
  };
}

Filter to_fractional_filter(const Filter& classical, const AngleParam& alpha) {
  Filter f = classical;
  for (std::size_t i = 0; i < f.taps.size(); ++i) {
    const double n = classical.first_index + static_cast<double>(i);
    f.taps[i] *= unit_phase(-n * n * alpha.cot_alpha() / 8.0);
  }
  return f;
}

Filter to_classical_filter(const Filter& fractional, const AngleParam& alpha) {
  Filter f = fractional;
  for (std::size_t i = 0; i < f.taps.size(); ++i) {
    const double n = fractional.first_index + static_cast<double>(i);
    f.taps[i] *= unit_phase(n * n * alpha.cot_alpha() / 8.0);
  }
  return f;
}

}  // namespace fracmra
