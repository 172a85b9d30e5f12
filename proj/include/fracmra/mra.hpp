#pragma once

#include <vector>

#include "fracmra/catalog.hpp"
#include "fracmra/systems.hpp"

namespace fracmra {

inline constexpr std::size_t kDefaultProfileSamples = 4096;
inline constexpr int kDefaultTruncation = 512;
inline constexpr int kDefaultSymbolTruncation = 64;

/// Normalized lattice sum g2(u) = sum_k |Theta(u + k P)|^2 / c_norm over one
/// period, P = 2 pi |sin alpha| and c_norm = 1 / P. An orthonormal generator
/// has g2 = 1.
struct PeriodizationProfile {
  AngleParam alpha;
  UniformGrid u_grid;
  std::vector<double> g2;
  int truncation_K = kDefaultTruncation;
  /// max |g2(K) - g2(K/2)| after tail extrapolation.
  double tail_bound = 0.0;
  Diagnostics diagnostics;

  double raw_sum(std::size_t i) const { return g2[i] * alpha.normalization(); }
};

/// From tabulated Theta samples. Throws CoverageError when the table does not
/// reach u + k P for every |k| <= K.
PeriodizationProfile periodization(const SpectrumTable& theta, const AngleParam& alpha,
                                   const UniformGrid& u_grid, int K = kDefaultTruncation);
/// From the spectrum of phi directly; band-limited kinds are summed exactly.
PeriodizationProfile periodization(const FunctionDescriptor& phi, const AngleParam& alpha,
                                   std::size_t samples = kDefaultProfileSamples,
                                   int K = kDefaultTruncation);

struct RieszBounds {
  double A = 0.0;
  double B = 0.0;
  double ratio() const { return B / A; }
};

RieszBounds riesz_bounds(const PeriodizationProfile& profile);

struct OrthonormalityResult {
  bool pass = false;
  double defect = 0.0;       // sup |g2 - 1|
  double gram_defect = 0.0;  // max |G - I|
  double tail_bound = 0.0;
  Diagnostics diagnostics;
};

OrthonormalityResult orthonormality_test(const FunctionDescriptor& phi, const AngleParam& alpha,
                                         double tol = 1e-3);
OrthonormalityResult orthonormality_test(const FunctionDescriptor& phi, const AngleParam& alpha,
                                         const PeriodizationProfile& profile, double tol);

/// Spectral division by sqrt(g2); the result is a spectral descriptor.
FunctionDescriptor orthonormalize(const FunctionDescriptor& phi, const AngleParam& alpha);

/// Periodic factor of the refinement relation
/// Theta(2u) = exp(3 i cot u^2 / 2) Lambda(u) Theta(u).
struct TwoScaleSymbol {
  AngleParam alpha;
  UniformGrid u_grid;
  std::vector<Complex> lambda;
  /// Lambda at u_i + step / 2, clear of the lattice points where
  /// band-limited symbols jump.
  std::vector<Complex> lambda_offset;
  Filter h;  // fractional taps
  double residual = 0.0;
  double seam_defect = 0.0;
  Diagnostics diagnostics;
};

TwoScaleSymbol two_scale_symbol(const FunctionDescriptor& phi, const AngleParam& alpha,
                                std::size_t samples = kDefaultProfileSamples,
                                int K = kDefaultSymbolTruncation);

/// sup_u | |Lambda(u)|^2 + |Lambda(u + P/2)|^2 - 1 | over the offset samples.
double qmf_defect(const TwoScaleSymbol& symbol);

struct LimitProfile {
  std::vector<double> u_samples;
  std::vector<std::vector<double>> table;  // table[i][j] = |Theta(2^-j u_i)|
  std::vector<double> limit_estimates;     // table[i][j_max]
  double ell = 0.0;
  double max_deviation = 0.0;
  double monotone_fraction = 0.0;
  Complex theta0;
  double theta0_ratio = 0.0;  // |Theta(0)| / ell
  bool pass = false;
};

/// {+-1, +-2, +-5} followed by 201 points on [-10, 10].
std::vector<double> default_limit_samples();

LimitProfile limit_profile(const FunctionDescriptor& phi, const AngleParam& alpha, int j_max = 12,
                           std::vector<double> u_samples = {}, double tol = 1e-3);

struct ConditionOne {
  double constant_estimate = 0.0;
  double deviation = 0.0;
  bool pass = false;
};
struct ConditionTwo {
  double limit_estimate = 0.0;
  double monotone_fraction = 0.0;
  bool pass = false;
};
struct ConditionThree {
  double residual = 0.0;
  bool pass = false;
};
struct ThetaZero {
  Complex value;
  double modulus = 0.0;
  bool pass = false;
};

struct ValidationReport {
  AngleParam alpha;
  std::string function;
  ConditionOne condition_51;
  ConditionTwo condition_52;
  ConditionThree condition_53;
  RieszBounds riesz;
  double qmf_defect = 0.0;
  ThetaZero theta0;
  Complex c_alpha;
  double ell = 0.0;
  bool verdict = false;
  Diagnostics diagnostics;
};

ValidationReport validate_scaling(const FunctionDescriptor& phi, const AngleParam& alpha,
                                  double tol = 1e-3);

/// Generator whose fractional spectrum has modulus |Theta_phi|; the kernel's
/// unimodular factor C/|C| exp(i u^2 cot / 2) is kept.
FunctionDescriptor modulus_variant(const FunctionDescriptor& phi, const AngleParam& alpha);

struct ProjectionResult {
  double value = 0.0;          // sum_{|k| <= k_range} |<f, phi_{j,k}>|^2
  double tail_fraction = 0.0;  // share of the outer 5% of k
  Diagnostics diagnostics;
};

ProjectionResult projection_norm(const SampledSignal& f, const FunctionDescriptor& phi_on,
                                 const AngleParam& alpha, int j, int k_range);
ProjectionResult projection_norm(const FunctionDescriptor& f, const FunctionDescriptor& phi_on,
                                 const AngleParam& alpha, int j, int k_range);

}  // namespace fracmra
