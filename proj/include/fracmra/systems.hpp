#pragma once

#include <vector>

#include "fracmra/catalog.hpp"

namespace fracmra {

struct FractionalAtomIndex {
  int j = 0;
  int k = 0;
};

enum class GramMethod { time_quadrature, frequency_quadrature };

/// Inner products <phi_{alpha,0,n}, phi_{alpha,0,m}> for n, m in [-order, order].
struct GramMatrix {
  int order = 0;
  std::vector<Complex> entries;  // row-major, (2 order + 1)^2
  GramMethod method = GramMethod::time_quadrature;
  Diagnostics diagnostics;

  std::size_t dim() const { return static_cast<std::size_t>(2 * order + 1); }
  Complex at(int n, int m) const { return entries[(n + order) * dim() + (m + order)]; }
  /// max |G - I| over all entries.
  double identity_defect() const;
};

/// phi(t - n) exp(-i (t n + n^2) cot alpha).
FunctionDescriptor chirp_translate(const FunctionDescriptor& phi, int n, const AngleParam& alpha);

/// 2^{j/2} phi(2^j t - k) exp(-(i/2) [t^2 - (2^-j k)^2 - (2^j t - k)^2] cot alpha).
FunctionDescriptor dilate_translate(const FunctionDescriptor& phi, int j, int k,
                                    const AngleParam& alpha);

/// Time-domain Gauss panels for compactly supported kinds with pointwise
/// values, frequency-domain panels otherwise.
GramMatrix gram_matrix(const FunctionDescriptor& phi, const AngleParam& alpha, int order = 8);
GramMatrix gram_matrix(const FunctionDescriptor& phi, const AngleParam& alpha, int order,
                       GramMethod method);

/// g(t) = phi(t) exp(+i t^2 cot alpha / 2).
FunctionDescriptor demodulate(const FunctionDescriptor& phi, const AngleParam& alpha);

/// L2 norm of a descriptor by Gauss panels over its support; non-compact
/// kinds are integrated on the frequency side.
double l2_norm(const FunctionDescriptor& phi);

}  // namespace fracmra
