#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracmra/grid.hpp"

namespace fracmra {

/// Evaluates y[m] = sum_n x[n] exp(-i (omega0 + m domega) (t0 + n dt)) for
/// m in [0, count) in O((N + M) log(N + M)) with Bluestein's identity
/// nm = (n^2 + m^2 - (m - n)^2) / 2.
std::vector<Complex> scaled_fourier_sum(std::span<const Complex> x, double t0, double dt,
                                        double omega0, double domega, std::size_t count);

/// Unnormalized forward DFT, y[m] = sum_n x[n] exp(-2 pi i nm / N).
std::vector<Complex> dft(std::span<const Complex> x);

}  // namespace fracmra
