#include "fracmra/chirp_z.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <mutex>

namespace fracmra {
namespace {

// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    std::memset(data_, 0, sizeof(fftw_complex) * n);
  }
  ~FftBuffer() { fftw_free(data_); }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  fftw_complex* raw() { return data_; }
  Complex* data() { return reinterpret_cast<Complex*>(data_); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  fftw_complex* data_;
};

class FftPlan {
 public:
  FftPlan(FftBuffer& buf, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(buf.size()), buf.raw(), buf.raw(), sign,
                             FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute() { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

// exp(-i theta) with theta = scale * n^2 / 2 reduced before the sine/cosine
// call; n^2 is exact in double for the sizes used here.
Complex half_square_phase(double scale, double n) {
  const double theta = 0.5 * scale * n * n;
  return std::polar(1.0, -std::remainder(theta, 2.0 * std::numbers::pi));
}

constexpr std::size_t kDirectLimit = 1u << 14;

std::vector<Complex> direct_sum(std::span<const Complex> x, double t0, double dt, double omega0,
                                double domega, std::size_t count) {
  std::vector<Complex> y(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double w = omega0 + static_cast<double>(m) * domega;
    Complex acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      acc += x[n] * std::polar(1.0, -w * (t0 + static_cast<double>(n) * dt));
    }
    y[m] = acc;
  }
  return y;
}

}  // namespace

std::vector<Complex> scaled_fourier_sum(std::span<const Complex> x, double t0, double dt,
                                        double omega0, double domega, std::size_t count) {
  const std::size_t n_in = x.size();
  if (n_in == 0 || count == 0) return std::vector<Complex>(count);
  if (n_in * count <= kDirectLimit) return direct_sum(x, t0, dt, omega0, domega, count);

  const double beta = domega * dt;
  const std::size_t len = std::bit_ceil(n_in + count - 1);

  FftBuffer a(len);
  FftBuffer b(len);
  FftPlan fa(a, FFTW_FORWARD);
  FftPlan fb(b, FFTW_FORWARD);
  FftPlan ia(a, FFTW_BACKWARD);

  Complex* ap = a.data();
  for (std::size_t n = 0; n < n_in; ++n) {
    const double nd = static_cast<double>(n);
    ap[n] = x[n] * std::polar(1.0, -std::remainder(omega0 * nd * dt, 2.0 * std::numbers::pi)) *
            half_square_phase(beta, nd);
  }
  Complex* bp = b.data();
  for (std::size_t k = 0; k < count; ++k) {
    bp[k] = std::conj(half_square_phase(beta, static_cast<double>(k)));
  }
  for (std::size_t k = 1; k < n_in; ++k) {
    bp[len - k] = std::conj(half_square_phase(beta, static_cast<double>(k)));
  }

  fa.execute();
  fb.execute();
  for (std::size_t i = 0; i < len; ++i) ap[i] *= bp[i];
  ia.execute();

  std::vector<Complex> y(count);
  const double inv_len = 1.0 / static_cast<double>(len);
  const Complex lead = std::polar(1.0, -std::remainder(omega0 * t0, 2.0 * std::numbers::pi));
  for (std::size_t m = 0; m < count; ++m) {
    const double md = static_cast<double>(m);
    const Complex shift =
        std::polar(1.0, -std::remainder(md * domega * t0, 2.0 * std::numbers::pi));
    y[m] = lead * shift * half_square_phase(beta, md) * ap[m] * inv_len;
  }
  return y;
}

std::vector<Complex> dft(std::span<const Complex> x) {
  FftBuffer buf(x.size());
  FftPlan plan(buf, FFTW_FORWARD);
  std::copy(x.begin(), x.end(), buf.data());
  plan.execute();
  return {buf.data(), buf.data() + x.size()};
}

}  // namespace fracmra
