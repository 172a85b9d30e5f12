#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracmra/angle.hpp"
#include "fracmra/grid.hpp"

namespace fracmra {

enum class FunctionKind {
  haar,
  shannon,
  bspline,
  filter_defined,
  sampled,
  spectral,
  haar_wavelet,
  shannon_wavelet,
  mexican_hat,
  gaussian,
  derived,
};

enum class Interpolation { bandlimited, linear };

/// Classical profile g and its non-unitary Fourier transform
/// g_hat(w) = int g(t) exp(-i w t) dt. Either callable may be empty.
struct Prototype {
  std::function<Complex(double)> value;
  std::function<Complex(double)> spectrum;
  double support_lo = -std::numeric_limits<double>::infinity();
  double support_hi = std::numeric_limits<double>::infinity();
  /// Points where g or a derivative jumps; Gauss panels break here.
  std::vector<double> knots;
  /// g_hat vanishes for |w| >= band (Shannon-type) when finite.
  double band = std::numeric_limits<double>::infinity();

  bool compact() const { return std::isfinite(support_lo) && std::isfinite(support_hi); }
};

/// phi(t) = amplitude * g(t) * exp(-i chirp_rate t^2 / 2).
/// Demodulated catalog entries use chirp_rate = cot(alpha_built_for).
struct FunctionDescriptor {
  FunctionKind kind = FunctionKind::derived;
  std::string name;
  int order = 0;
  std::vector<Complex> filter;  // classical taps for filter_defined
  int filter_first = 0;
  Interpolation interpolation = Interpolation::bandlimited;
  AngleParam alpha_built_for;
  bool demodulated = false;
  double chirp_rate = 0.0;
  Complex amplitude = 1.0;
  std::shared_ptr<const Prototype> prototype;
};

/// Finite filter h[first], h[first + 1], ...
struct Filter {
  int first_index = 0;
  std::vector<Complex> taps;

  int last_index() const { return first_index + static_cast<int>(taps.size()) - 1; }
  Complex at(int n) const {
    const int i = n - first_index;
    return (i < 0 || i >= static_cast<int>(taps.size())) ? Complex{} : taps[i];
  }
};

/// Scaling functions: "haar", "shannon", "bspline<m>" with m >= 2.
FunctionDescriptor make_scaling(const std::string& name, const AngleParam& alpha);
/// Wavelet prototypes (classical, chirp supplied by the atoms): "haar",
/// "shannon", "mexican_hat", "gaussian".
FunctionDescriptor make_wavelet(const std::string& name, const AngleParam& alpha);
/// Scaling function given by its fractional refinement filter; evaluated
/// through the infinite product of its symbol.
FunctionDescriptor make_filter_defined(const Filter& h, const AngleParam& alpha);
/// Samples of phi itself (chirp included) with a declared interpolation rule.
FunctionDescriptor make_sampled(const SampledSignal& samples, Interpolation interp,
                                const AngleParam& alpha);
/// Demodulated function known through g_hat only.
FunctionDescriptor make_spectral(std::string name, std::function<Complex(double)> spectrum,
                                 const AngleParam& alpha, double band);

Complex eval_function(const FunctionDescriptor& phi, double t);

/// Theta_alpha(u) = C exp(i u^2 cot/2) R(u csc) where R is the classical
/// transform of phi(t) exp(i t^2 cot/2). R is closed-form when phi is
/// demodulated for alpha and g_hat is known; otherwise it comes from a dense
/// chirp-z table of sampled phi.
class SpectrumEvaluator {
 public:
  SpectrumEvaluator(const FunctionDescriptor& phi, const AngleParam& alpha);

  Complex theta(double u) const;
  Complex reduced(double omega) const;
  bool analytic() const { return analytic_; }
  double band() const { return band_; }
  const AngleParam& alpha() const { return alpha_; }
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  AngleParam alpha_;
  Complex amplitude_;
  std::shared_ptr<const Prototype> prototype_;
  bool analytic_ = false;
  double band_ = std::numeric_limits<double>::infinity();
  // numeric path
  double table_start_ = 0.0;
  double table_step_ = 1.0;
  double center_ = 0.0;
  std::vector<Complex> table_;
  Diagnostics diagnostics_;
};

/// Samples of Theta_alpha on `out`; closed form where available, otherwise
/// frft_fast of a sampled phi.
SpectrumTable frft_of_scaling(const FunctionDescriptor& phi, const AngleParam& alpha,
                              const UniformGrid& out);

enum class TestSignalKind { gaussian, chirp, rectangle, bandlimited_random, hermite };

struct TestSignalSpec {
  TestSignalKind kind = TestSignalKind::gaussian;
  double scale = 1.0;     // Gaussian width s in exp(-t^2 / (2 s^2))
  double center = 0.0;
  double rate = 0.0;      // chirp: exp(i rate t^2 / 2)
  double lo = 0.0;        // rectangle on [lo, hi)
  double hi = 1.0;
  std::uint64_t seed = 0;
  double band_lo = -1.0;  // random tones drawn in [band_lo, band_hi]
  double band_hi = 1.0;
  int tones = 8;
  int order = 1;          // Hermite order
  /// Extra factor exp(-i demod_rate t^2 / 2) for fractional band limits.
  double demod_rate = 0.0;
};

SampledSignal make_test_signal(const TestSignalSpec& spec, const UniformGrid& grid);

/// Classical symbol m0(w) = (1/sqrt 2) sum h[n] exp(-i n w).
Complex filter_symbol(const Filter& h, double omega);
/// Same as a reusable callable; long filters go through a dense FFT table
/// with cubic interpolation.
std::function<Complex(double)> symbol_function(const Filter& h);

/// Fractional taps h[n] = h_cl[n] exp(-i n^2 cot / 8) and back.
Filter to_fractional_filter(const Filter& classical, const AngleParam& alpha);
Filter to_classical_filter(const Filter& fractional, const AngleParam& alpha);

}  // namespace fracmra
