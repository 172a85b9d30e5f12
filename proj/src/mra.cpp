#include "fracmra/mra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracmra/chirp_z.hpp"
#include "fracmra/errors.hpp"
#include "fracmra/frft.hpp"
#include "interp.hpp"

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

// Sum over k > K of F(k) for F(k) ~ N / y_k^p, y_k = |w0 + step k|, from the
// two samples at K/2 and K. Returns 0 when the samples do not look like a
// decaying power law.
double power_tail(double f_half, double f_full, double y_half, double y_full, double y_next,
                  double step) {
  if (!(f_full > 0.0) || !(f_half > 0.0) || !(y_full > y_half) || !(y_half > 0.0)) return 0.0;
  const double p = std::clamp(std::log(f_half / f_full) / std::log(y_full / y_half), 2.0, 12.0);
  const double amplitude = f_full * std::pow(y_full, p);
  return amplitude / (step * (p - 1.0) * std::pow(y_next, p - 1.0));
}

// Lattice sum of a non-negative function F over w0 + 2 pi k, |k| <= K, with
// both tails extrapolated. `half` receives the same sum truncated at K/2.
template <class F>
double lattice_sum(F&& power, double w0, int K, double* half) {
  double total = power(w0);
  double part = total;
  for (int side : {-1, 1}) {
    double s_half = 0.0;
    double s_full = 0.0;
    double f_half = 0.0;
    double f_full = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double f = power(w0 + side * kTwoPi * k);
      s_full += f;
      if (k <= K / 2) s_half += f;
      if (k == K / 2) f_half = f;
      if (k == K) f_full = f;
    }
    auto y = [&](double k) { return std::abs(w0 + side * kTwoPi * k); };
    const int Kh = K / 2;
    const int Kq = K / 4;
    // The K/2 tail uses the same rule one octave down.
    double f_quarter = Kq >= 1 ? power(w0 + side * kTwoPi * Kq) : 0.0;
    s_full += power_tail(f_half, f_full, y(Kh), y(K), y(K + 0.5), kTwoPi);
    s_half += Kq >= 1 ? power_tail(f_quarter, f_half, y(Kq), y(Kh), y(Kh + 0.5), kTwoPi) : 0.0;
    total += s_full;
    part += s_half;
  }
  if (half) *half = part;
  return total;
}

// Exact lattice sum for g_hat vanishing outside [-band, band).
template <class F>
double banded_sum(F&& power, double w0, double band) {
  const long k_lo = static_cast<long>(std::floor((-band - w0) / kTwoPi)) - 1;
  const long k_hi = static_cast<long>(std::ceil((band - w0) / kTwoPi)) + 1;
  double total = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) total += power(w0 + kTwoPi * static_cast<double>(k));
  return total;
}

UniformGrid period_grid(const AngleParam& alpha, std::size_t samples) {
  return UniformGrid::periodic(0.0, alpha.period(), samples);
}

}  // namespace

PeriodizationProfile periodization(const SpectrumTable& theta, const AngleParam& alpha,
                                   const UniformGrid& u_grid, int K) {
  require_generic(alpha, "periodization");
  if (K < 2) throw SpecError("truncation K must be at least 2");
  const double P = alpha.period();
  const double need_lo = u_grid.start() - K * P;
  const double need_hi = u_grid.back() + K * P;
  const double eps = 1e-9 * theta.grid.step();
  if (theta.grid.start() > need_lo + eps || theta.grid.back() < need_hi - eps) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "spectrum table covers [" << theta.grid.start() << ", " << theta.grid.back()
        << "] but the lattice sum needs [" << need_lo << ", " << need_hi << "]";
    throw CoverageError(msg.str());
  }
  std::vector<double> power(theta.values.size());
  for (std::size_t i = 0; i < power.size(); ++i) power[i] = std::norm(theta.values[i]);
  const double scale = 1.0 / alpha.normalization();
  auto lookup = [&](double u) {
    const double s = (u - theta.grid.start()) / theta.grid.step();
    const double r = std::round(s);
    if (std::abs(s - r) < 1e-9 && r >= 0 && r < static_cast<double>(power.size())) {
      return power[static_cast<std::size_t>(r)];
    }
    return std::max(0.0, detail::cubic_at(power, theta.grid.start(), theta.grid.step(), u));
  };

  PeriodizationProfile prof{alpha, u_grid, std::vector<double>(u_grid.count()), K, 0.0, {}};
  for (std::size_t i = 0; i < u_grid.count(); ++i) {
    const double u = u_grid.at(i);
    double half = 0.0;
    double total = lookup(u);
    half = total;
    for (int side : {-1, 1}) {
      double s_full = 0.0, s_half = 0.0, f_q = 0.0, f_h = 0.0, f_f = 0.0;
      for (int k = 1; k <= K; ++k) {
        const double f = lookup(u + side * P * k);
        s_full += f;
        if (k <= K / 2) s_half += f;
        if (k == K / 4) f_q = f;
        if (k == K / 2) f_h = f;
        if (k == K) f_f = f;
      }
      auto y = [&](double k) { return std::abs(u + side * P * k); };
      s_full += power_tail(f_h, f_f, y(K / 2), y(K), y(K + 0.5), P);
      if (K >= 4) s_half += power_tail(f_q, f_h, y(K / 4), y(K / 2), y(K / 2 + 0.5), P);
      total += s_full;
      half += s_half;
    }
    prof.g2[i] = total * scale;
    prof.tail_bound = std::max(prof.tail_bound, std::abs(total - half) * scale);
  }
  prof.diagnostics = theta.diagnostics;
  return prof;
}

PeriodizationProfile periodization(const FunctionDescriptor& phi, const AngleParam& alpha,
                                   std::size_t samples, int K) {
  require_generic(alpha, "periodization");
  if (K < 4) throw SpecError("truncation K must be at least 4");
  SpectrumEvaluator eval(phi, alpha);
  const UniformGrid grid = period_grid(alpha, samples);
  PeriodizationProfile prof{alpha, grid, std::vector<double>(samples), K, 0.0,
                            eval.diagnostics()};
  auto power = [&](double w) { return std::norm(eval.reduced(w)); };
  const double csc = alpha.csc_alpha();
  const bool banded = std::isfinite(eval.band()) && eval.analytic();
  for (std::size_t i = 0; i < samples; ++i) {
    const double w0 = grid.at(i) * csc;
    if (banded) {
      prof.g2[i] = banded_sum(power, w0, eval.band());
      continue;
    }
    double half = 0.0;
    prof.g2[i] = lattice_sum(power, w0, K, &half);
    prof.tail_bound = std::max(prof.tail_bound, std::abs(prof.g2[i] - half));
  }
  return prof;
}

RieszBounds riesz_bounds(const PeriodizationProfile& profile) {
  const auto [lo, hi] = std::minmax_element(profile.g2.begin(), profile.g2.end());
  RieszBounds r{*lo, *hi};
  if (!(r.A > 1e-12 * std::max(r.B, 1e-300))) {
    throw NotRieszError("periodization profile vanishes: lower Riesz bound is not positive");
  }
  return r;
}

OrthonormalityResult orthonormality_test(const FunctionDescriptor& phi, const AngleParam& alpha,
                                         double tol) {
  return orthonormality_test(phi, alpha, periodization(phi, alpha), tol);
}

OrthonormalityResult orthonormality_test(const FunctionDescriptor& phi, const AngleParam& alpha,
                                         const PeriodizationProfile& profile, double tol) {
  if (!(tol > 0.0)) throw SpecError("tolerance must be positive");
  OrthonormalityResult res;
  for (double v : profile.g2) res.defect = std::max(res.defect, std::abs(v - 1.0));
  res.tail_bound = profile.tail_bound;
  const auto gram = gram_matrix(phi, alpha);
  res.gram_defect = gram.identity_defect();
  res.diagnostics = profile.diagnostics;
  res.diagnostics.insert(res.diagnostics.end(), gram.diagnostics.begin(), gram.diagnostics.end());

  const bool by_profile = res.defect <= tol;
  const bool by_gram = res.gram_defect <= tol;
  res.pass = by_gram;
  if (by_profile != by_gram) {
    const double gap = std::abs(res.defect - res.gram_defect);
    std::ostringstream msg;
    msg.precision(6);
    msg << "periodization defect " << res.defect << " and Gram defect " << res.gram_defect
        << " disagree at tolerance " << tol;
    if (gap > res.tail_bound + tol) throw InconsistencyError(msg.str());
    res.diagnostics.push_back(msg.str() + "; Gram verdict kept");
  }
  return res;
}

FunctionDescriptor orthonormalize(const FunctionDescriptor& phi, const AngleParam& alpha) {
  require_generic(alpha, "orthonormalization");
  const auto profile = periodization(phi, alpha);
  riesz_bounds(profile);
  // Profile as a function of w = u csc on [0, 2 pi).
  const std::size_t n = profile.g2.size();
  auto table = std::make_shared<std::vector<double>>(n);
  const bool flipped = alpha.sin_alpha() < 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    (*table)[flipped ? (n - i) % n : i] = profile.g2[i];
  }
  const double step = kTwoPi / static_cast<double>(n);
  auto eval = std::make_shared<SpectrumEvaluator>(phi, alpha);
  auto spectrum = [eval, table, step](double w) {
    const double s = w / step;
    const double r = std::round(s);
    double g2;
    if (std::abs(s - r) < 1e-9) {
      long idx = static_cast<long>(std::fmod(r, static_cast<double>(table->size())));
      if (idx < 0) idx += static_cast<long>(table->size());
      g2 = (*table)[static_cast<std::size_t>(idx)];
    } else {
      g2 = detail::periodic_cubic_at(*table, 0.0, step, w);
    }
    return eval->reduced(w) / std::sqrt(g2);
  };
  auto d = make_spectral("orth(" + phi.name + ")", spectrum, alpha, eval->band());
  return d;
}

TwoScaleSymbol two_scale_symbol(const FunctionDescriptor& phi, const AngleParam& alpha,
                                std::size_t samples, int K) {
  require_generic(alpha, "two-scale symbol");
  SpectrumEvaluator eval(phi, alpha);
  const UniformGrid grid = period_grid(alpha, samples);
  const double csc = alpha.csc_alpha();
  const double c = cot_of(alpha);
  const double P = alpha.period();

  TwoScaleSymbol sym{alpha, grid, std::vector<Complex>(samples), {}, {}, 0.0, 0.0, eval.diagnostics()};
  std::size_t weak = 0;
  auto fit = [&](double u, bool* is_weak) {
    Complex num = 0.0;
    double den = 0.0;
    for (int k = -K; k <= K; ++k) {
      const double w = (u + k * P) * csc;
      const Complex s = eval.reduced(w);
      num += std::conj(s) * eval.reduced(2.0 * w);
      den += std::norm(s);
    }
    if (is_weak) *is_weak = den < 1e-24;
    return den > 0.0 ? num / den : Complex{};
  };
  for (std::size_t i = 0; i < samples; ++i) {
    bool w = false;
    sym.lambda[i] = fit(grid.at(i), &w);
    weak += w;
  }
  if (static_cast<double>(weak) > 0.2 * static_cast<double>(samples)) {
    sym.diagnostics.emplace_back("IllConditionedWarning: Theta vanishes on more than 20% of the period");
  }
  sym.seam_defect = std::abs(fit(P, nullptr) - sym.lambda[0]);
  sym.lambda_offset.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    sym.lambda_offset[i] = fit(grid.at(i) + 0.5 * grid.step(), nullptr);
  }

  for (std::size_t i = 0; i < samples; ++i) {
    for (int k = -K; k <= K; ++k) {
      const double u = grid.at(i) + k * P;
      const Complex lhs = eval.theta(2.0 * u);
      const Complex rhs = unit_phase(1.5 * c * u * u) * sym.lambda[i] * eval.theta(u);
      sym.residual = std::max(sym.residual, std::abs(lhs - rhs));
    }
  }

  // Lambda(u) = m0(u csc), m0(w) = (1/sqrt 2) sum h_cl[n] exp(-i n w).
  const auto spectrum = dft(sym.lambda);
  const long n = static_cast<long>(samples);
  std::vector<Complex> h_cl(samples);
  for (long idx = -n / 2; idx < n / 2; ++idx) {
    long j = alpha.sin_alpha() > 0 ? -idx : idx;
    j = ((j % n) + n) % n;
    h_cl[static_cast<std::size_t>(idx + n / 2)] =
        std::numbers::sqrt2 * spectrum[static_cast<std::size_t>(j)] / static_cast<double>(n);
  }
  long first = -1, last = -1;
  for (long i = 0; i < n; ++i) {
    if (std::abs(h_cl[static_cast<std::size_t>(i)]) >= 1e-10) {
      if (first < 0) first = i;
      last = i;
    }
  }
  Filter classical;
  if (first >= 0) {
    classical.first_index = static_cast<int>(first - n / 2);
    classical.taps.assign(h_cl.begin() + first, h_cl.begin() + last + 1);
  }
  sym.h = to_fractional_filter(classical, alpha);
  return sym;
}

double qmf_defect(const TwoScaleSymbol& symbol) {
  const auto& lambda = symbol.lambda_offset.empty() ? symbol.lambda : symbol.lambda_offset;
  const std::size_t n = lambda.size();
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::norm(lambda[i]) + std::norm(lambda[(i + n / 2) % n]);
    defect = std::max(defect, std::abs(s - 1.0));
  }
  return defect;
}

std::vector<double> default_limit_samples() {
  std::vector<double> u = {1.0, -1.0, 2.0, -2.0, 5.0, -5.0};
  for (int i = 0; i <= 200; ++i) u.push_back(-10.0 + 0.1 * i);
  return u;
}

LimitProfile limit_profile(const FunctionDescriptor& phi, const AngleParam& alpha, int j_max,
                           std::vector<double> u_samples, double tol) {
  require_generic(alpha, "limit profile");
  if (j_max < 0) throw SpecError("j_max must be non-negative");
  if (u_samples.empty()) u_samples = default_limit_samples();
  SpectrumEvaluator eval(phi, alpha);
  LimitProfile lp;
  lp.ell = alpha.limit_constant();
  lp.u_samples = u_samples;
  lp.theta0 = eval.theta(0.0);
  lp.theta0_ratio = std::abs(lp.theta0) / lp.ell;

  std::size_t monotone = 0;
  bool small_violations = true;
  for (double u : u_samples) {
    std::vector<double> row(j_max + 1);
    for (int j = 0; j <= j_max; ++j) row[j] = std::abs(eval.theta(std::ldexp(u, -j)));
    double worst = 0.0;
    for (int j = 1; j <= j_max; ++j) worst = std::max(worst, row[j - 1] - row[j]);
    // Exact ties (band-limited kinds) differ only by rounding.
    if (worst <= 1e-13 * lp.ell) {
      ++monotone;
    } else if (worst >= 1e-6) {
      small_violations = false;
    }
    lp.limit_estimates.push_back(row[j_max]);
    lp.max_deviation = std::max(lp.max_deviation, std::abs(row[j_max] - lp.ell));
    lp.table.push_back(std::move(row));
  }
  lp.monotone_fraction = static_cast<double>(monotone) / static_cast<double>(u_samples.size());
  lp.pass = lp.max_deviation <= tol && lp.monotone_fraction >= 0.99 && small_violations;
  return lp;
}

ValidationReport validate_scaling(const FunctionDescriptor& phi, const AngleParam& alpha,
                                  double tol) {
  require_generic(alpha, "validation");
  ValidationReport rep;
  rep.alpha = alpha;
  rep.function = phi.name;
  rep.c_alpha = alpha.c_alpha();
  rep.ell = alpha.limit_constant();

  const auto profile = periodization(phi, alpha);
  const auto ortho = orthonormality_test(phi, alpha, profile, tol);
  double mean = 0.0;
  for (double v : profile.g2) mean += v;
  mean /= static_cast<double>(profile.g2.size());
  rep.condition_51 = {mean, ortho.defect, ortho.pass};
  rep.riesz = riesz_bounds(profile);

  const auto limit = limit_profile(phi, alpha, 12, {}, tol);
  double lim = 0.0;
  for (double v : limit.limit_estimates) lim += v;
  lim /= static_cast<double>(limit.limit_estimates.size());
  rep.condition_52 = {lim, limit.monotone_fraction, limit.pass};

  const auto symbol = two_scale_symbol(phi, alpha);
  rep.condition_53 = {symbol.residual, symbol.residual <= tol};
  rep.qmf_defect = qmf_defect(symbol);

  rep.theta0.value = limit.theta0;
  rep.theta0.modulus = std::abs(limit.theta0);
  rep.theta0.pass = rep.theta0.modulus > 0.0 && std::abs(limit.theta0_ratio - 1.0) <= tol;

  rep.verdict = rep.condition_51.pass && rep.condition_52.pass && rep.condition_53.pass;
  rep.diagnostics = ortho.diagnostics;
  rep.diagnostics.insert(rep.diagnostics.end(), symbol.diagnostics.begin(), symbol.diagnostics.end());
  rep.diagnostics.emplace_back("verdict is numerically consistent with the characterization on grid samples");
  std::sort(rep.diagnostics.begin(), rep.diagnostics.end());
  rep.diagnostics.erase(std::unique(rep.diagnostics.begin(), rep.diagnostics.end()),
                        rep.diagnostics.end());
  return rep;
}

FunctionDescriptor modulus_variant(const FunctionDescriptor& phi, const AngleParam& alpha) {
  require_generic(alpha, "modulus variant");
  auto eval = std::make_shared<SpectrumEvaluator>(phi, alpha);
  return make_spectral(
      "upsilon(" + phi.name + ")", [eval](double w) -> Complex { return std::abs(eval->reduced(w)); },
      alpha, eval->band());
}

namespace {

// c_k = (1/2 pi) sum_n X(w_n) 2^{-j/2} conj(R(2^-j w_n)) exp(i k 2^-j w_n) dw.
ProjectionResult project(const std::vector<Complex>& x, double w0, double dw,
                         const SpectrumEvaluator& on, int j, int k_range) {
  const double s = std::exp2(-j);
  std::vector<Complex> y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double w = w0 + static_cast<double>(n) * dw;
    y[n] = x[n] * std::sqrt(s) * std::conj(on.reduced(s * w)) * (dw / kTwoPi);
  }
  const auto c = scaled_fourier_sum(y, w0, dw, k_range * s, -s, 2 * static_cast<std::size_t>(k_range) + 1);
  ProjectionResult res;
  double outer = 0.0;
  const int edge = std::max(1, k_range / 20);
  for (int m = 0; m < static_cast<int>(c.size()); ++m) {
    const double e = std::norm(c[m]);
    res.value += e;
    if (std::abs(m - k_range) > k_range - edge) outer += e;
  }
  res.tail_fraction = res.value > 0.0 ? outer / res.value : 0.0;
  if (res.tail_fraction > 1e-6) {
    res.diagnostics.emplace_back("TruncationWarning: coefficients near |k| = k_range carry " +
                                 std::to_string(res.tail_fraction) + " of the energy");
  }
  return res;
}

double band_of(const SpectrumEvaluator& on, int j) {
  return std::isfinite(on.band()) ? on.band() * std::exp2(j) : std::numeric_limits<double>::infinity();
}

}  // namespace

ProjectionResult projection_norm(const SampledSignal& f, const FunctionDescriptor& phi_on,
                                 const AngleParam& alpha, int j, int k_range) {
  require_generic(alpha, "projection");
  if (k_range < 1) throw SpecError("k_range must be positive");
  SpectrumEvaluator on(phi_on, alpha);
  const double c = cot_of(alpha);
  const double h = f.grid.step();
  const double extent = std::max(std::abs(f.grid.start()), std::abs(f.grid.back()));
  const double reach = k_range * std::exp2(-j) + extent + 4.0 * std::exp2(-j);
  const double dw = kPi / (2.0 * reach);
  const double w_max = std::min(kPi / h, band_of(on, j));
  const auto count = static_cast<std::size_t>(std::ceil(2.0 * w_max / dw));
  const double w0 = -w_max;

  std::vector<Complex> g(f.values.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double t = f.grid.at(n);
    const double w = (n == 0 || n + 1 == g.size()) ? 0.5 * h : h;
    g[n] = w * f.values[n] * unit_phase(0.5 * c * t * t);
  }
  const auto x = scaled_fourier_sum(g, f.grid.start(), h, w0, dw, count);
  auto res = project(x, w0, dw, on, j, k_range);
  if (edge_truncated(f.grid, f.values)) {
    res.diagnostics.emplace_back("TruncationWarning: input does not decay at the grid edges");
  }
  return res;
}

ProjectionResult projection_norm(const FunctionDescriptor& f, const FunctionDescriptor& phi_on,
                                 const AngleParam& alpha, int j, int k_range) {
  require_generic(alpha, "projection");
  if (k_range < 1) throw SpecError("k_range must be positive");
  SpectrumEvaluator on(phi_on, alpha);
  SpectrumEvaluator fe(f, alpha);
  const auto& p = *f.prototype;
  const double extent =
      p.compact() ? std::max(std::abs(p.support_lo), std::abs(p.support_hi)) : 8.0;
  const double reach = k_range * std::exp2(-j) + extent + 4.0 * std::exp2(-j);
  const double w_max =
      std::min(std::isfinite(fe.band()) ? fe.band() : 512.0 * std::max(1.0, std::exp2(j)),
               band_of(on, j));
  // Uniform weights on [-w_max, w_max): exact for band-limited periodic
  // integrands once the count exceeds 2 k_range.
  auto count = static_cast<std::size_t>(std::ceil(2.0 * w_max * reach / kPi));
  count = std::max(count, 2 * static_cast<std::size_t>(k_range) + 2);
  const double dw = 2.0 * w_max / static_cast<double>(count);
  std::vector<Complex> x(count);
  for (std::size_t n = 0; n < count; ++n) x[n] = fe.reduced(-w_max + static_cast<double>(n) * dw);
  auto res = project(x, -w_max, dw, on, j, k_range);
  if (!std::isfinite(fe.band())) {
    res.diagnostics.emplace_back("TruncationWarning: spectrum of f cut at |w| = " + std::to_string(w_max));
  }
  return res;
}

}  // namespace fracmra
