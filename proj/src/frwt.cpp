#include "fracmra/frwt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracmra/chirp_z.hpp"
#include "fracmra/errors.hpp"
#include "fracmra/frft.hpp"
#include "fracmra/quadrature.hpp"

namespace fracmra {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double theta) { return std::polar(1.0, std::remainder(theta, kTwoPi)); }

double cot_of(const AngleParam& alpha) {
  return std::abs(alpha.cot_alpha()) < 1e-14 ? 0.0 : alpha.cot_alpha();
}

void require_generic(const AngleParam& alpha, const char* what) {
  if (!alpha.generic()) throw SpecialAngleError(std::string(what) + " needs a generic angle");
}

// Classical transform of psi itself, chirp included.
SpectrumEvaluator plain_spectrum(const FunctionDescriptor& psi) {
  return SpectrumEvaluator(psi, AngleParam(std::numbers::pi / 2));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Complex admissibility_kernel(const FunctionDescriptor& psi, const AngleParam& alpha, double xi) {
  require_generic(alpha, "admissibility");
  const auto spec = plain_spectrum(psi);
  return alpha.c_alpha() * spec.reduced(xi * std::tan(0.5 * alpha.alpha()));
}

AdmissibilityResult admissibility(const FunctionDescriptor& psi, const AngleParam& alpha,
                                  double delta) {
  require_generic(alpha, "admissibility");
  if (!(delta > 0.0)) throw SpecError("admissibility cut must be positive");
  const auto spec = plain_spectrum(psi);
  const double tau = std::abs(std::tan(0.5 * alpha.alpha()));
  const double c2 = std::norm(alpha.c_alpha());
  const double slope = std::tan(0.5 * alpha.alpha());
  // Both signs of xi at once.
  auto density = [&](double xi) {
    const double w = xi * slope;
    return c2 * (std::norm(spec.reduced(w)) + std::norm(spec.reduced(-w))) / xi;
  };
  // Integrate dxi / xi near the origin in s = ln xi.
  auto log_piece = [&](double lo, double hi) {
    const double ls = std::log(lo), hs = std::log(hi);
    const auto breaks = quad::uniform_breaks(ls, hs, 0.25);
    return quad::panels<double>(
        [&](double s) {
          const double xi = std::exp(s);
          return density(xi) * xi;
        },
        breaks);
  };

  AdmissibilityResult res;
  res.delta = delta;
  const double xi_knee = 1.0 / tau;
  const double w_max = std::isfinite(spec.band()) ? spec.band() : 4096.0;
  const double xi_max = w_max / tau;
  const double panel = 0.25 / tau;

  double body = 0.0;
  if (delta < xi_knee) {
    body += log_piece(delta, xi_knee);
  }
  const double linear_lo = std::max(delta, xi_knee);
  std::vector<double> knots;
  if (std::isfinite(spec.band())) {
    // Band edges of Shannon-type spectra at |w| = pi, 2 pi, ... in xi units.
    for (double w = kPi; w < w_max; w += kPi) knots.push_back(w / tau);
  }
  auto breaks = quad::breakpoints(std::move(knots), linear_lo, xi_max);
  std::vector<double> dense;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto seg = quad::uniform_breaks(breaks[i], breaks[i + 1], panel);
    dense.insert(dense.end(), seg.begin() + (dense.empty() ? 0 : 1), seg.end());
  }
  body += quad::panels<double>(density, dense);
  if (!std::isfinite(spec.band())) {
    const auto lower = quad::uniform_breaks(xi_max / 4.0, xi_max / 2.0, panel);
    const auto upper = quad::uniform_breaks(xi_max / 2.0, xi_max, panel);
    const double a = quad::panels<double>(density, lower);
    const double b = quad::panels<double>(density, upper);
    if (a > 0.0 && b > 0.0 && b / a < 0.9) body += b * (b / a) / (1.0 - b / a);
  }

  res.refinements.push_back(body);
  std::vector<double> increments;
  double cut = delta;
  for (int m = 0; m < 3; ++m) {
    const double inc = log_piece(0.5 * cut, cut);
    increments.push_back(inc);
    res.refinements.push_back(res.refinements.back() + inc);
    cut *= 0.5;
  }
  res.value = body;
  const bool jump = increments[0] > 0.1 * body;
  const bool log_growth = increments[0] > 1e-6 * body && increments[1] > 0.5 * increments[0] &&
                          increments[2] > 0.5 * increments[1];
  res.admissible = std::isfinite(body) && !jump && !log_growth;
  if (!res.admissible) {
    res.diagnostics.emplace_back("NotAdmissible: estimate keeps growing as the cut at xi = 0 is halved");
  }
  return res;
}

Complex wavelet_atom(const FunctionDescriptor& psi, const AngleParam& alpha, double a, double b,
                     double t) {
  return eval_function(psi, (t - b) / a) / std::sqrt(a) *
         unit_phase(-0.5 * (t * t - b * b) * cot_of(alpha));
}

CwtTable cwt(const SampledSignal& f, const FunctionDescriptor& psi, const AngleParam& alpha,
             const std::vector<double>& a_grid, const std::vector<double>& b_grid) {
  for (double a : a_grid) {
    if (!(a > 0.0)) throw SpecError("wavelet scales must be positive");
  }
  CwtTable table{a_grid, b_grid, std::vector<Complex>(a_grid.size() * b_grid.size()), {}};
  const double h = f.grid.step();
  const auto& p = *psi.prototype;
  for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
    for (std::size_t ib = 0; ib < b_grid.size(); ++ib) {
      const double a = a_grid[ia];
      const double b = b_grid[ib];
      Complex acc = 0.0;
      for (std::size_t n = 0; n < f.values.size(); ++n) {
        const double t = f.grid.at(n);
        if (p.compact()) {
          const double s = (t - b) / a;
          if (s < p.support_lo || s > p.support_hi) continue;
        }
        const double w = (n == 0 || n + 1 == f.values.size()) ? 0.5 * h : h;
        acc += w * f.values[n] * std::conj(wavelet_atom(psi, alpha, a, b, t));
      }
      table.coeffs[ia * b_grid.size() + ib] = acc;
    }
  }
  if (edge_truncated(f.grid, f.values)) {
    table.diagnostics.emplace_back("TruncationWarning: input does not decay at the grid edges");
  }
  return table;
}

FunctionDescriptor discrete_atom(const FunctionDescriptor& psi, const AngleParam& alpha, int j,
                                 int k) {
  require_generic(alpha, "wavelet atoms");
  const double c = cot_of(alpha);
  const double scale = std::exp2(j);
  const double kd = k;
  const double centre = kd / scale;
  auto spec = std::make_shared<SpectrumEvaluator>(plain_spectrum(psi));
  const auto& p = *psi.prototype;

  Prototype proto;
  // Stored g is the atom times exp(+i t^2 cot / 2).
  proto.value = [psi, scale, kd, centre, c](double t) {
    const double literal_phase = -0.5 * (t * t - centre * centre) * c;
    return std::sqrt(scale) * eval_function(psi, scale * t - kd) *
           unit_phase(literal_phase) * unit_phase(0.5 * c * t * t);
  };
  proto.spectrum = [spec, scale, centre, c](double w) {
    return spec->reduced(w / scale) / std::sqrt(scale) *
           unit_phase(-centre * w + 0.5 * centre * centre * c);
  };
  proto.support_lo = (p.support_lo + kd) / scale;
  proto.support_hi = (p.support_hi + kd) / scale;
  for (double kn : p.knots) proto.knots.push_back((kn + kd) / scale);
  proto.band = spec->band() * scale;

  FunctionDescriptor d;
  d.kind = FunctionKind::derived;
  d.name = psi.name + "{" + std::to_string(j) + "," + std::to_string(k) + "}";
  d.alpha_built_for = alpha;
  d.demodulated = true;
  d.chirp_rate = c;
  d.amplitude = 1.0;
  d.prototype = std::make_shared<const Prototype>(std::move(proto));
  return d;
}

std::vector<WaveletAtom> discrete_atoms(const FunctionDescriptor& psi, const AngleParam& alpha,
                                        const WaveletAtomGrid& grid) {
  if (grid.j_range.size() < 1 || grid.k_range.size() < 1) throw SpecError("empty atom grid");
  std::vector<WaveletAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(grid.j_range.size()) * grid.k_range.size());
  for (int j = grid.j_range.lo; j <= grid.j_range.hi; ++j) {
    for (int k = grid.k_range.lo; k <= grid.k_range.hi; ++k) {
      atoms.push_back({j, k, discrete_atom(psi, alpha, j, k)});
    }
  }
  return atoms;
}

namespace {

struct DemodulatedSignal {
  std::vector<Complex> x;  // f exp(i t^2 cot / 2) h
  double energy = 0.0;
  double extent = 0.0;
  double w_lo = 0.0;
  double w_hi = 0.0;
  std::vector<Complex> coarse;
  double coarse_start = 0.0;
  double coarse_step = 0.0;
};

DemodulatedSignal demodulated_signal(const SampledSignal& f, const AngleParam& alpha) {
  const double c = cot_of(alpha);
  const double h = f.grid.step();
  DemodulatedSignal d;
  d.x.resize(f.values.size());
  for (std::size_t n = 0; n < d.x.size(); ++n) {
    const double t = f.grid.at(n);
    d.energy += std::norm(f.values[n]) * h;
    d.x[n] = f.values[n] * unit_phase(0.5 * c * t * t) * h;
  }
  if (!(d.energy > 0.0)) throw SpecError("frame ratio of a zero signal");

  // Effective band from a coarse pass.
  d.extent = std::max(std::abs(f.grid.start()), std::abs(f.grid.back()));
  const double w_nyq = kPi / h;
  d.coarse_start = -w_nyq;
  d.coarse_step = kPi / (2.0 * d.extent);
  const auto n_coarse = static_cast<std::size_t>(std::ceil(2.0 * w_nyq / d.coarse_step));
  d.coarse = scaled_fourier_sum(d.x, f.grid.start(), h, -w_nyq, d.coarse_step, n_coarse);
  double peak = 0.0;
  for (const auto& z : d.coarse) peak = std::max(peak, std::abs(z));
  std::size_t lo = 0, hi = d.coarse.size() - 1;
  while (lo < hi && std::abs(d.coarse[lo]) < 1e-10 * peak) ++lo;
  while (hi > lo && std::abs(d.coarse[hi]) < 1e-10 * peak) --hi;
  d.w_lo = -w_nyq + d.coarse_step * (static_cast<double>(lo) - 1.0);
  d.w_hi = -w_nyq + d.coarse_step * (static_cast<double>(hi) + 1.0);
  return d;
}

}  // namespace

std::vector<double> frame_scale_energies(const SampledSignal& f, const FunctionDescriptor& psi,
                                         const AngleParam& alpha, const WaveletAtomGrid& grid) {
  require_generic(alpha, "frame estimate");
  if (grid.j_range.size() < 1 || grid.k_range.size() < 1) throw SpecError("empty atom grid");
  const auto spec = plain_spectrum(psi);
  const auto d = demodulated_signal(f, alpha);
  const double h = f.grid.step();
  const int k_max = std::max(std::abs(grid.k_range.lo), std::abs(grid.k_range.hi));
  const double support = psi.prototype->compact()
                             ? std::max(std::abs(psi.prototype->support_lo),
                                        std::abs(psi.prototype->support_hi))
                             : 8.0;
  std::vector<double> energies;
  for (int j = grid.j_range.lo; j <= grid.j_range.hi; ++j) {
    const double s = std::exp2(-j);
    double a = d.w_lo, b = d.w_hi;
    std::vector<double> knots;
    if (std::isfinite(spec.band())) {
      a = std::max(a, -spec.band() / s);
      b = std::min(b, spec.band() / s);
      // Band-limited spectra may jump at multiples of pi.
      for (double w = kPi; w < spec.band(); w += kPi) {
        knots.push_back(w / s);
        knots.push_back(-w / s);
      }
    }
    if (!(b > a)) {
      energies.push_back(0.0);
      continue;
    }
    const auto breaks = quad::breakpoints(std::move(knots), a, b);
    const double reach = k_max * s + d.extent + support * s;
    // Trapezoid sums lose their spectral accuracy at interior jumps; the
    // error there scales like (dw k 2^-j)^2.
    const double dw_max = kPi / (2.0 * reach) / (breaks.size() > 2 ? 32.0 : 1.0);
    std::vector<Complex> coeffs(static_cast<std::size_t>(grid.k_range.size()));
    for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
      const double lo = breaks[seg], hi = breaks[seg + 1];
      const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / dw_max)) + 1;
      const double dw = (hi - lo) / static_cast<double>(count - 1);
      const double nudge = 1e-9 * dw;
      auto spectrum = scaled_fourier_sum(d.x, f.grid.start(), h, lo, dw, count);
      for (std::size_t n = 0; n < count; ++n) {
        double w = lo + static_cast<double>(n) * dw;
        // One-sided limits at the segment ends.
        if (n == 0) w += nudge;
        if (n + 1 == count) w = hi - nudge;
        const double weight = (n == 0 || n + 1 == count) ? 0.5 * dw : dw;
        spectrum[n] *= std::sqrt(s) * std::conj(spec.reduced(s * w)) * (weight / kTwoPi);
      }
      // c_k = sum_n y_n exp(i k s w_n), k in k_range.
      const auto part = scaled_fourier_sum(spectrum, lo, dw, -grid.k_range.lo * s, -s, coeffs.size());
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += part[i];
    }
    double sum = 0.0;
    for (const auto& z : coeffs) sum += std::norm(z);
    energies.push_back(sum / d.energy);
  }
  return energies;
}

double frame_ratio_for(const SampledSignal& f, const FunctionDescriptor& psi,
                       const AngleParam& alpha, const WaveletAtomGrid& grid,
                       Diagnostics* diagnostics) {
  require_generic(alpha, "frame estimate");
  if (grid.j_range.size() < 1 || grid.k_range.size() < 1) throw SpecError("empty atom grid");
  const auto d = demodulated_signal(f, alpha);
  // Energy outside the dyadic band covered by the scale range.
  double total = 0.0, below = 0.0, above = 0.0;
  const double floor_w = std::exp2(grid.j_range.lo) * kPi;
  const double ceil_w = std::exp2(grid.j_range.hi + 1) * kPi;
  for (std::size_t i = 0; i < d.coarse.size(); ++i) {
    const double w = std::abs(d.coarse_start + d.coarse_step * static_cast<double>(i));
    const double e = std::norm(d.coarse[i]);
    total += e;
    if (w < floor_w) below += e;
    if (w > ceil_w) above += e;
  }
  if (below > 1e-3 * total || above > 1e-3 * total) {
    throw CoverageError("test signal carries energy outside the band covered by the atom grid");
  }
  double sum = 0.0;
  for (double e : frame_scale_energies(f, psi, alpha, grid)) sum += e;
  if (diagnostics && edge_truncated(f.grid, f.values)) {
    diagnostics->emplace_back("TruncationWarning: test signal does not decay at the grid edges");
  }
  return sum;
}

SampledSignal frame_test_signal(const AngleParam& alpha, std::uint64_t seed, int index) {
  TestSignalSpec spec;
  spec.kind = TestSignalKind::bandlimited_random;
  spec.scale = 2.0;
  spec.band_lo = 2.0;
  spec.band_hi = 6.0;
  spec.tones = 8;
  spec.seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
  spec.demod_rate = cot_of(alpha);
  return make_test_signal(spec, UniformGrid::centered(16.0, 256));
}

FrameEstimate frame_ratio(const FunctionDescriptor& psi, const AngleParam& alpha, int trials,
                          std::uint64_t seed, const WaveletAtomGrid& grid) {
  if (trials < 1) throw SpecError("need at least one trial");
  FrameEstimate est;
  est.trials = trials;
  est.seed = seed;
  for (int i = 0; i < trials; ++i) {
    const auto f = frame_test_signal(alpha, seed, i);
    est.per_signal_ratios.push_back(frame_ratio_for(f, psi, alpha, grid, &est.diagnostics));
  }
  const auto [lo, hi] =
      std::minmax_element(est.per_signal_ratios.begin(), est.per_signal_ratios.end());
  est.A_hat = *lo;
  est.B_hat = *hi;
  est.diagnostics.emplace_back("inner estimates from finite trials on a truncated lattice");
  std::sort(est.diagnostics.begin(), est.diagnostics.end());
  est.diagnostics.erase(std::unique(est.diagnostics.begin(), est.diagnostics.end()),
                        est.diagnostics.end());
  return est;
}

FunctionDescriptor wavelet_from_filter(const Filter& h, const FunctionDescriptor& phi_on,
                                       const AngleParam& alpha) {
  require_generic(alpha, "wavelet construction");
  if (h.taps.empty()) throw SpecError("empty filter");
  const Filter h_cl = to_classical_filter(h, alpha);
  Filter g;
  g.first_index = 1 - h_cl.last_index();
  for (int n = g.first_index; n <= 1 - h_cl.first_index; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    g.taps.push_back(sign * std::conj(h_cl.at(1 - n)));
  }
  auto m1 = symbol_function(g);
  auto on = std::make_shared<SpectrumEvaluator>(phi_on, alpha);
  auto d = make_spectral(
      "wavelet(" + phi_on.name + ")",
      [m1, on](double w) { return m1(0.5 * w) * on->reduced(0.5 * w); }, alpha,
      on->band() * 2.0);
  d.demodulated = false;
  d.chirp_rate = 0.0;
  d.filter = g.taps;
  d.filter_first = g.first_index;
  return d;
}

}  // namespace fracmra
