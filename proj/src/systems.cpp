#include "fracmra/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracmra/errors.hpp"
#include "fracmra/quadrature.hpp"

namespace fracmra {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOmegaMax = 2048.0;

Complex unit_phase(double theta) { return std::polar(1.0, std::remainder(theta, kTwoPi)); }

double cot_of(const AngleParam& alpha) {
  return std::abs(alpha.cot_alpha()) < 1e-14 ? 0.0 : alpha.cot_alpha();
}

bool has_closed_spectrum(const FunctionDescriptor& phi, const AngleParam& alpha) {
  return phi.prototype->spectrum && std::abs(phi.chirp_rate - cot_of(alpha)) <= 1e-12;
}

// Wraps a literal pointwise atom as a descriptor demodulated for alpha:
// stored g is atom(t) exp(+i t^2 cot / 2).
FunctionDescriptor derived_atom(const FunctionDescriptor& parent, const AngleParam& alpha,
                                std::function<Complex(double)> literal,
                                std::function<Complex(double)> spectrum, double lo, double hi,
                                std::vector<double> knots, double band, std::string name) {
  const double c = cot_of(alpha);
  Prototype p;
  p.value = [literal, c](double t) { return literal(t) * unit_phase(0.5 * c * t * t); };
  p.spectrum = std::move(spectrum);
  p.support_lo = lo;
  p.support_hi = hi;
  p.knots = std::move(knots);
  p.band = band;
  FunctionDescriptor d;
  d.kind = FunctionKind::derived;
  d.name = std::move(name);
  d.alpha_built_for = alpha;
  d.demodulated = true;
  d.chirp_rate = c;
  d.interpolation = parent.interpolation;
  d.prototype = std::make_shared<const Prototype>(std::move(p));
  return d;
}

// Integrates the tail of a power-law-decaying positive integrand beyond
// omega_max from its last two octaves.
double octave_tail(double lower_octave, double upper_octave) {
  if (!(lower_octave > 0.0) || !(upper_octave > 0.0)) return 0.0;
  const double ratio = upper_octave / lower_octave;
  if (ratio >= 0.5) return 0.0;  // not decaying fast enough to extrapolate safely
  return upper_octave * ratio / (1.0 - ratio);
}

GramMatrix frequency_gram(const FunctionDescriptor& phi, const AngleParam& alpha, int order) {
  SpectrumEvaluator eval(phi, alpha);
  GramMatrix g;
  g.order = order;
  g.method = GramMethod::frequency_quadrature;
  const double c = cot_of(alpha);
  const std::size_t dim = 2 * order + 1;
  g.entries.assign(dim * dim, Complex{});

  const bool band_limited = std::isfinite(eval.band());
  const double omega_max = band_limited ? eval.band() : kOmegaMax;
  std::vector<Complex> lag(2 * order + 1);
  for (int d = 0; d <= 2 * order; ++d) {
    const int shift = d;
    auto integrand = [&](double w) { return std::norm(eval.reduced(w)) * unit_phase(-shift * w); };
    const auto breaks = quad::uniform_breaks(-omega_max, omega_max, std::numbers::pi / 4.0);
    lag[d] = quad::panels<Complex>(integrand, breaks) / kTwoPi;
  }
  if (!band_limited) {
    double tail = 0.0;
    for (double side : {-1.0, 1.0}) {
      auto power = [&](double w) { return std::norm(eval.reduced(side * w)); };
      const auto lower = quad::uniform_breaks(omega_max / 4.0, omega_max / 2.0, std::numbers::pi / 4.0);
      const auto upper = quad::uniform_breaks(omega_max / 2.0, omega_max, std::numbers::pi / 4.0);
      tail += octave_tail(quad::panels<double>(power, lower), quad::panels<double>(power, upper));
    }
    lag[0] += tail / kTwoPi;
    if (tail / kTwoPi > 1e-10 * lag[0].real()) {
      g.diagnostics.emplace_back("TruncationWarning: spectral tail beyond |w| = 2048 extrapolated");
    }
  }
  for (int n = -order; n <= order; ++n) {
    for (int m = -order; m <= order; ++m) {
      const int d = n - m;
      const Complex l = d >= 0 ? lag[d] : std::conj(lag[-d]);
      g.entries[(n + order) * dim + (m + order)] =
          unit_phase(-1.5 * (static_cast<double>(n) * n - static_cast<double>(m) * m) * c) * l;
    }
  }
  g.diagnostics.insert(g.diagnostics.end(), eval.diagnostics().begin(), eval.diagnostics().end());
  return g;
}

GramMatrix time_gram(const FunctionDescriptor& phi, const AngleParam& alpha, int order) {
  const auto& p = *phi.prototype;
  GramMatrix g;
  g.order = order;
  g.method = GramMethod::time_quadrature;
  const std::size_t dim = 2 * order + 1;
  g.entries.assign(dim * dim, Complex{});

  std::vector<FunctionDescriptor> atoms;
  atoms.reserve(dim);
  for (int n = -order; n <= order; ++n) atoms.push_back(chirp_translate(phi, n, alpha));

  const double mismatch = std::abs(phi.chirp_rate - cot_of(alpha));
  for (int n = -order; n <= order; ++n) {
    for (int m = n; m <= order; ++m) {
      const double lo = std::max(p.support_lo + n, p.support_lo + m);
      const double hi = std::min(p.support_hi + n, p.support_hi + m);
      Complex value = 0.0;
      if (hi > lo) {
        std::vector<double> knots;
        for (double k : p.knots) {
          knots.push_back(k + n);
          knots.push_back(k + m);
        }
        for (int s : {n, m}) {
          knots.push_back(p.support_lo + s);
          knots.push_back(p.support_hi + s);
        }
        const auto breaks = quad::breakpoints(std::move(knots), lo, hi);
        const double longest = hi - lo;
        const int sub = 1 + static_cast<int>(std::ceil(std::abs(n - m) * mismatch * longest / 2.0));
        const auto& a = atoms[n + order];
        const auto& b = atoms[m + order];
        value = quad::panels<Complex>(
            [&](double t) { return eval_function(a, t) * std::conj(eval_function(b, t)); }, breaks, sub);
      }
      g.entries[(n + order) * dim + (m + order)] = value;
      g.entries[(m + order) * dim + (n + order)] = std::conj(value);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    auto& d = g.entries[i * dim + i];
    d = d.real();
  }
  return g;
}

}  // namespace

double GramMatrix::identity_defect() const {
  double defect = 0.0;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      defect = std::max(defect, std::abs(entries[i * n + j] - (i == j ? 1.0 : 0.0)));
    }
  }
  return defect;
}

FunctionDescriptor chirp_translate(const FunctionDescriptor& phi, int n, const AngleParam& alpha) {
  if (!alpha.generic()) throw SpecialAngleError("fractional translates need a generic angle");
  const double c = cot_of(alpha);
  const double nd = n;
  auto literal = [phi, nd, c](double t) {
    return eval_function(phi, t - nd) * unit_phase(-(t * nd + nd * nd) * c);
  };
  std::function<Complex(double)> spectrum;
  if (has_closed_spectrum(phi, alpha)) {
    auto eval = std::make_shared<SpectrumEvaluator>(phi, alpha);
    spectrum = [eval, nd, c](double w) {
      return eval->reduced(w) * unit_phase(-nd * w - 1.5 * nd * nd * c);
    };
  }
  const auto& p = *phi.prototype;
  std::vector<double> knots;
  for (double k : p.knots) knots.push_back(k + nd);
  return derived_atom(phi, alpha, literal, spectrum, p.support_lo + nd, p.support_hi + nd,
                      std::move(knots), p.band, phi.name + "[0," + std::to_string(n) + "]");
}

FunctionDescriptor dilate_translate(const FunctionDescriptor& phi, int j, int k,
                                    const AngleParam& alpha) {
  if (!alpha.generic()) throw SpecialAngleError("fractional dilates need a generic angle");
  const double c = cot_of(alpha);
  const double scale = std::exp2(j);
  const double kd = k;
  const double centre = kd / scale;
  auto literal = [phi, scale, kd, centre, c](double t) {
    const double s = scale * t - kd;
    return std::sqrt(scale) * eval_function(phi, s) *
           unit_phase(-0.5 * (t * t - centre * centre - s * s) * c);
  };
  std::function<Complex(double)> spectrum;
  if (has_closed_spectrum(phi, alpha)) {
    auto eval = std::make_shared<SpectrumEvaluator>(phi, alpha);
    spectrum = [eval, scale, centre, c](double w) {
      return eval->reduced(w / scale) / std::sqrt(scale) *
             unit_phase(-centre * w + 0.5 * centre * centre * c);
    };
  }
  const auto& p = *phi.prototype;
  std::vector<double> knots;
  for (double kn : p.knots) knots.push_back((kn + kd) / scale);
  return derived_atom(phi, alpha, literal, spectrum, (p.support_lo + kd) / scale,
                      (p.support_hi + kd) / scale, std::move(knots), p.band * scale,
                      phi.name + "[" + std::to_string(j) + "," + std::to_string(k) + "]");
}

GramMatrix gram_matrix(const FunctionDescriptor& phi, const AngleParam& alpha, int order) {
  const auto& p = *phi.prototype;
  const auto method = (p.compact() && p.value) ? GramMethod::time_quadrature
                                               : GramMethod::frequency_quadrature;
  return gram_matrix(phi, alpha, order, method);
}

GramMatrix gram_matrix(const FunctionDescriptor& phi, const AngleParam& alpha, int order,
                       GramMethod method) {
  if (!alpha.generic()) throw SpecialAngleError("Gram matrices need a generic angle");
  if (order < 0) throw SpecError("Gram order must be non-negative");
  if (method == GramMethod::time_quadrature) {
    if (!phi.prototype->compact() || !phi.prototype->value) {
      throw SpecError("time-domain Gram needs a compactly supported pointwise function");
    }
    return time_gram(phi, alpha, order);
  }
  return frequency_gram(phi, alpha, order);
}

FunctionDescriptor demodulate(const FunctionDescriptor& phi, const AngleParam& alpha) {
  if (!alpha.generic()) throw SpecialAngleError("demodulation needs a generic angle");
  FunctionDescriptor g = phi;
  g.chirp_rate = phi.chirp_rate - cot_of(alpha);
  if (std::abs(g.chirp_rate) < 1e-14) g.chirp_rate = 0.0;
  g.demodulated = false;
  return g;
}

double l2_norm(const FunctionDescriptor& phi) {
  const auto& p = *phi.prototype;
  if (p.compact() && p.value) {
    const auto breaks = quad::breakpoints(p.knots, p.support_lo, p.support_hi);
    return std::sqrt(
        quad::panels<double>([&](double t) { return std::norm(eval_function(phi, t)); }, breaks));
  }
  const AngleParam alpha =
      phi.alpha_built_for.generic() ? phi.alpha_built_for : AngleParam(std::numbers::pi / 2);
  const auto g = frequency_gram(phi, alpha, 0);
  return std::sqrt(g.entries[0].real());
}

}  // namespace fracmra
