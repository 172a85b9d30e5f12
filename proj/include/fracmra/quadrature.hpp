#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace fracmra::quad {

inline constexpr unsigned kOrder = 20;

/// Composite Gauss-Legendre rule over consecutive breakpoints. Each panel is
/// split into `subdivisions` equal pieces. Exact for polynomials of degree
/// < 2 * kOrder on every piece.
template <class T, class F>
T panels(F&& f, std::span<const double> breaks, int subdivisions = 1) {
  using Rule = boost::math::quadrature::gauss<double, kOrder>;
  static const auto& x = Rule::abscissa();
  static const auto& w = Rule::weights();
  T sum{};
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double width = (breaks[p + 1] - breaks[p]) / subdivisions;
    if (!(width > 0.0)) continue;
    for (int s = 0; s < subdivisions; ++s) {
      const double lo = breaks[p] + s * width;
      const double mid = lo + 0.5 * width;
      const double half = 0.5 * width;
      T piece{};
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
          piece += w[i] * f(mid);
        } else {
          piece += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
        }
      }
      sum += piece * half;
    }
  }
  return sum;
}

/// Sorted, de-duplicated breakpoints clipped to [lo, hi] with both ends added.
inline std::vector<double> breakpoints(std::vector<double> knots, double lo, double hi) {
  knots.push_back(lo);
  knots.push_back(hi);
  std::erase_if(knots, [&](double k) { return k < lo || k > hi; });
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-14; }),
              knots.end());
  return knots;
}

/// Uniform breakpoints lo, lo + width, ..., hi.
inline std::vector<double> uniform_breaks(double lo, double hi, double width) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / width)));
  std::vector<double> b(n + 1);
  for (std::size_t i = 0; i <= n; ++i) b[i] = lo + (hi - lo) * static_cast<double>(i) / n;
  return b;
}

}  // namespace fracmra::quad
