#pragma once

#include "fracmra/angle.hpp"
#include "fracmra/grid.hpp"

namespace fracmra {

/// Edge samples (first and last 1% of the grid) above this fraction of the
/// peak magnitude mark a truncated input.
inline constexpr double kEdgeTolerance = 1e-8;

/// C_alpha exp{i (t^2 + u^2) cot(alpha)/2 - i t u csc(alpha)}.
/// Throws SpecialAngleError for delta-kernel angles.
Complex kernel_eval(double t, double u, const AngleParam& alpha);

/// True when |f| exceeds kEdgeTolerance * max|f| in the outer 1% of the grid.
bool edge_truncated(const UniformGrid& grid, const std::vector<Complex>& values);

/// Direct trapezoid evaluation of the transform integral at every output
/// point. O(N M); this is the reference the fast path is checked against.
/// Delta-kernel angles return the input (identity) or its reflection
/// (parity) on the reflected grid; `out` is ignored for them.
SpectrumTable frft_quadrature(const SampledSignal& f, const AngleParam& alpha,
                              const UniformGrid& out);

/// Chirp-multiply, scaled Fourier sum (chirp-z), chirp-multiply. Output on the
/// input grid.
SpectrumTable frft_fast(const SampledSignal& f, const AngleParam& alpha);
/// Same, on an arbitrary uniform output grid.
SpectrumTable frft_fast(const SampledSignal& f, const AngleParam& alpha, const UniformGrid& out);

/// Inverse transform via the conjugate kernel, i.e. the transform of order
/// -alpha, evaluated on the spectrum's grid.
SampledSignal ifrft(const SpectrumTable& spectrum, const AngleParam& alpha);

}  // namespace fracmra
