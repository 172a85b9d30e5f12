#pragma once

#include <cmath>
#include <vector>

namespace fracmra::detail {

// Four-point Lagrange weights for x in [0, 1) on nodes -1, 0, 1, 2.
inline void lagrange4(double x, double w[4]) {
  const double xm1 = x + 1.0, x1 = x - 1.0, x2 = x - 2.0;
  w[0] = -x * x1 * x2 / 6.0;
  w[1] = xm1 * x1 * x2 / 2.0;
  w[2] = -xm1 * x * x2 / 2.0;
  w[3] = xm1 * x * x1 / 6.0;
}

/// Table sampled at start + i * step; zero outside.
template <class T>
T cubic_at(const std::vector<T>& table, double start, double step, double x) {
  const double s = (x - start) / step;
  const double fl = std::floor(s);
  const long i = static_cast<long>(fl);
  const long n = static_cast<long>(table.size());
  if (i < 0 || i >= n || (i == n - 1 && s > fl)) return T{};
  double w[4];
  lagrange4(s - fl, w);
  T acc{};
  for (int k = -1; k <= 2; ++k) {
    const long j = i + k;
    if (j >= 0 && j < n) acc += w[k + 1] * table[j];
  }
  return acc;
}

/// Table holding one period [start, start + n * step).
template <class T>
T periodic_cubic_at(const std::vector<T>& table, double start, double step, double x) {
  const long n = static_cast<long>(table.size());
  const double s = (x - start) / step;
  const double fl = std::floor(s);
  long i = static_cast<long>(std::fmod(fl, static_cast<double>(n)));
  if (i < 0) i += n;
  double w[4];
  lagrange4(s - fl, w);
  T acc{};
  for (int k = -1; k <= 2; ++k) {
    long j = (i + k) % n;
    if (j < 0) j += n;
    acc += w[k + 1] * table[j];
  }
  return acc;
}

}  // namespace fracmra::detail
