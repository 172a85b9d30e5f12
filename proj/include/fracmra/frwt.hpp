#pragma once

#include <cstdint>
#include <vector>

#include "fracmra/catalog.hpp"

namespace fracmra {

struct IntRange {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
};

struct WaveletAtomGrid {
  AngleParam alpha;
  IntRange j_range{-6, 8};
  IntRange k_range{-256, 256};
  double a0 = 2.0;
  double b0 = 1.0;
};

struct FrameEstimate {
  double A_hat = 0.0;
  double B_hat = 0.0;
  std::vector<double> per_signal_ratios;
  int trials = 0;
  std::uint64_t seed = 0;
  Diagnostics diagnostics;
};

struct AdmissibilityResult {
  double value = 0.0;   // estimate with the lower cut at delta
  bool admissible = false;
  double delta = 1e-4;
  std::vector<double> refinements;  // estimates at delta, delta/2, delta/4, delta/8
  Diagnostics diagnostics;
};

/// int |F_alpha{exp(-i (t - xi)^2 cot / 2) psi}(xi)|^2 / |xi| dxi over
/// delta <= |xi| <= Xi. Divergence is declared from the behaviour of the
/// estimate as the lower cut is halved.
AdmissibilityResult admissibility(const FunctionDescriptor& psi, const AngleParam& alpha,
                                  double delta = 1e-4);

/// The inner transform of the admissibility integrand at a single xi.
Complex admissibility_kernel(const FunctionDescriptor& psi, const AngleParam& alpha, double xi);

struct CwtTable {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<Complex> coeffs;  // row-major over (a, b)
  Diagnostics diagnostics;

  Complex at(std::size_t ia, std::size_t ib) const { return coeffs[ia * b.size() + ib]; }
};

/// a^{-1/2} psi((t - b) / a) exp(-i (t^2 - b^2) cot / 2).
Complex wavelet_atom(const FunctionDescriptor& psi, const AngleParam& alpha, double a, double b,
                     double t);

CwtTable cwt(const SampledSignal& f, const FunctionDescriptor& psi, const AngleParam& alpha,
             const std::vector<double>& a_grid, const std::vector<double>& b_grid);

struct WaveletAtom {
  int j = 0;
  int k = 0;
  FunctionDescriptor atom;
};

/// 2^{j/2} psi(2^j t - k) exp(-i (t^2 - (2^-j k)^2) cot / 2).
FunctionDescriptor discrete_atom(const FunctionDescriptor& psi, const AngleParam& alpha, int j,
                                 int k);
std::vector<WaveletAtom> discrete_atoms(const FunctionDescriptor& psi, const AngleParam& alpha,
                                        const WaveletAtomGrid& grid);

/// sum_{j,k} |<f, psi_{j,k}>|^2 / ||f||^2 for one signal.
double frame_ratio_for(const SampledSignal& f, const FunctionDescriptor& psi,
                       const AngleParam& alpha, const WaveletAtomGrid& grid,
                       Diagnostics* diagnostics = nullptr);

/// sum_k |<f, psi_{j,k}>|^2 / ||f||^2 for each j in the grid, without the
/// coverage check.
std::vector<double> frame_scale_energies(const SampledSignal& f, const FunctionDescriptor& psi,
                                         const AngleParam& alpha, const WaveletAtomGrid& grid);

/// Bandlimited random test signal used for trial `index` of a frame estimate.
SampledSignal frame_test_signal(const AngleParam& alpha, std::uint64_t seed, int index);

FrameEstimate frame_ratio(const FunctionDescriptor& psi, const AngleParam& alpha, int trials,
                          std::uint64_t seed, const WaveletAtomGrid& grid);

/// Classical prototype psi with psi_hat(w) = m1(w/2) R_on(w/2), where
/// g[n] = (-1)^n conj(h_cl[1 - n]) and R_on is the reduced spectrum of the
/// orthonormal scaling function.
FunctionDescriptor wavelet_from_filter(const Filter& h, const FunctionDescriptor& phi_on,
                                       const AngleParam& alpha);

}  // namespace fracmra
