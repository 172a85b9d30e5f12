#include "fracmra/angle.hpp"

#include <cmath>

namespace fracmra {

AngleParam::AngleParam(double alpha) : alpha_(alpha) {
  sin_ = std::sin(alpha);
  const double cos_alpha = std::cos(alpha);
  if (std::abs(sin_) <= kAngleEpsilon) {
    kind_ = cos_alpha > 0 ? AngleKind::identity : AngleKind::parity;
    cot_ = std::numeric_limits<double>::infinity();
    csc_ = std::numeric_limits<double>::infinity();
    c_alpha_ = 0.0;
    return;
  }
  kind_ = AngleKind::generic;
  cot_ = cos_alpha / sin_;
  csc_ = 1.0 / sin_;
  c_alpha_ = std::sqrt(std::complex<double>(1.0, -cot_) / (2.0 * std::numbers::pi));
}

double AngleParam::period() const noexcept { return 2.0 * std::numbers::pi * std::abs(sin_); }

double AngleParam::normalization() const noexcept { return 1.0 / period(); }

double AngleParam::limit_constant() const noexcept { return 1.0 / std::sqrt(period()); }

}  // namespace fracmra
