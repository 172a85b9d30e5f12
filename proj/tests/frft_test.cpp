#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "fracmra/catalog.hpp"
#include "fracmra/chirp_z.hpp"
#include "fracmra/errors.hpp"
#include "fracmra/frft.hpp"
#include "support.hpp"

using namespace fracmra;
using testing::kPi;

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;
using WideComplex = boost::multiprecision::cpp_complex_50;

Complex wide_kernel(double t, double u, double alpha) {
  const Wide a(alpha);
  const Wide cot = boost::multiprecision::cos(a) / boost::multiprecision::sin(a);
  const Wide csc = 1 / boost::multiprecision::sin(a);
  const WideComplex c = boost::multiprecision::sqrt(
      WideComplex(Wide(1), -cot) / (2 * boost::math::constants::pi<Wide>()));
  const Wide wt(t), wu(u);
  const Wide phase = (wt * wt + wu * wu) * cot / 2 - wt * wu * csc;
  const WideComplex k = c * WideComplex(boost::multiprecision::cos(phase), boost::multiprecision::sin(phase));
  return {static_cast<double>(k.real()), static_cast<double>(k.imag())};
}

// F_alpha of exp(-t^2 / (2 s^2)) from the Gaussian integral.
Complex gaussian_transform(double s, double u, const AngleParam& alpha) {
  const double cot = alpha.cot_alpha(), csc = alpha.csc_alpha();
  const Complex a(1.0 / (2.0 * s * s), -0.5 * cot);
  const Complex b(0.0, -u * csc);
  return alpha.c_alpha() * std::polar(1.0, 0.5 * u * u * cot) * std::sqrt(kPi / a) *
         std::exp(b * b / (4.0 * a));
}

double hermite_function(int n, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  if (n == 0) return std::exp(-0.5 * x * x);
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1 * std::exp(-0.5 * x * x);
}

SampledSignal sample(const UniformGrid& g, auto f) {
  std::vector<Complex> v(g.count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.at(i));
  return {g, std::move(v)};
}

}  // namespace

TEST_CASE("kernel matches an extended-precision evaluation", "[frft][oracle]") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = testing::generic_angle(rng);
    const double t = rng.uniform(-6.0, 6.0);
    const double u = rng.uniform(-6.0, 6.0);
    const Complex got = kernel_eval(t, u, AngleParam(alpha));
    const Complex want = wide_kernel(t, u, alpha);
    REQUIRE(std::abs(got - want) <= 1e-11 * std::abs(want));
  }
}

TEST_CASE("kernel rejects delta-kernel angles", "[frft]") {
  CHECK_THROWS_AS(kernel_eval(0.1, 0.2, AngleParam(0.0)), SpecialAngleError);
  CHECK_THROWS_AS(kernel_eval(0.1, 0.2, AngleParam(kPi)), SpecialAngleError);
  CHECK_THROWS_AS(kernel_eval(0.1, 0.2, AngleParam(-2.0 * kPi)), SpecialAngleError);
}

TEST_CASE("Gaussian transforms match the closed form", "[frft][oracle]") {
  const auto grid = UniformGrid::centered(16.0, 4096);
  for (double s : {0.7, 1.0, 1.8}) {
    const auto f = sample(grid, [s](double t) { return Complex(std::exp(-t * t / (2 * s * s))); });
    for (double alpha : {kPi / 6, kPi / 4, kPi / 3, kPi / 2, 2 * kPi / 3, -1.1, 2.9}) {
      const AngleParam a(alpha);
      const auto fast = frft_fast(f, a);
      std::vector<Complex> want(grid.count());
      for (std::size_t i = 0; i < want.size(); ++i) want[i] = gaussian_transform(s, grid.at(i), a);
      INFO("s = " << s << " alpha = " << alpha);
      CHECK(testing::rel_err(fast.values, want) <= 1e-9);
    }
  }
}

TEST_CASE("Hermite functions are eigenfunctions with eigenvalue exp(-i n alpha)", "[frft][oracle]") {
  const auto grid = UniformGrid::centered(16.0, 4096);
  for (int n = 0; n <= 5; ++n) {
    const auto f = sample(grid, [n](double t) { return Complex(hermite_function(n, t)); });
    for (double alpha : {kPi / 6, kPi / 3, 1.3, -2.2}) {
      const auto out = frft_fast(f, AngleParam(alpha));
      std::vector<Complex> want(f.values);
      for (auto& z : want) z *= std::polar(1.0, -n * alpha);
      INFO("n = " << n << " alpha = " << alpha);
      CHECK(testing::rel_err(out.values, want) <= 1e-9);
    }
  }
}

TEST_CASE("quarter turn reduces to the unitary Fourier transform", "[frft][oracle]") {
  const auto grid = UniformGrid::centered(8.0, 512);
  testing::Rng rng(5);
  TestSignalSpec spec;
  spec.kind = TestSignalKind::bandlimited_random;
  spec.band_lo = -6.0;
  spec.band_hi = 6.0;
  spec.seed = 3;
  const auto f = make_test_signal(spec, grid);
  const auto got = frft_fast(f, AngleParam(kPi / 2));
  std::vector<Complex> want(grid.count());
  for (std::size_t m = 0; m < want.size(); ++m) {
    Complex acc = 0.0;
    for (std::size_t n = 0; n < f.values.size(); ++n) {
      acc += f.values[n] * std::polar(1.0, -grid.at(n) * grid.at(m));
    }
    want[m] = acc * grid.step() / std::sqrt(2 * kPi);
  }
  CHECK(testing::rel_err(got.values, want) <= 1e-12);
}

TEST_CASE("rectangle on a midpoint grid approaches 2 sin(u) / (u sqrt(2 pi))", "[frft][oracle]") {
  const std::size_t n = 8192;
  const double h = 32.0 / n;
  const UniformGrid grid(-16.0 + 0.5 * h, h, n);
  const auto f = sample(grid, [](double t) { return Complex(std::abs(t) < 1.0 ? 1.0 : 0.0); });
  const UniformGrid out(-20.0, 0.01, 4001);
  const auto got = frft_quadrature(f, AngleParam(kPi / 2), out);
  double err = 0.0;
  for (std::size_t i = 0; i < out.count(); ++i) {
    const double u = out.at(i);
    const double want = (std::abs(u) < 1e-12 ? 2.0 : 2.0 * std::sin(u) / u) / std::sqrt(2 * kPi);
    err = std::max(err, std::abs(got.values[i] - want));
  }
  CHECK(err <= 1e-4);
  // The 1/u tail is cut at the output edge.
  CHECK(got.truncated());
}

TEST_CASE("fast and quadrature paths agree", "[frft][property]") {
  testing::Rng rng(21);
  const auto grid = UniformGrid::centered(8.0, 512);
  for (int trial = 0; trial < 12; ++trial) {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::bandlimited_random;
    spec.seed = rng.next();
    spec.band_lo = -4.0;
    spec.band_hi = 4.0;
    spec.scale = 1.5;
    const auto f = make_test_signal(spec, grid);
    const AngleParam a(testing::generic_angle(rng));
    const auto fast = frft_fast(f, a);
    const auto slow = frft_quadrature(f, a, fast.grid);
    CHECK(testing::rel_err(fast.values, slow.values) <= 1e-10);
  }
}

TEST_CASE("transform is unitary and inverted by the negative order", "[frft][property]") {
  testing::Rng rng(8);
  const auto grid = UniformGrid::centered(16.0, 4096);
  for (int trial = 0; trial < 10; ++trial) {
    TestSignalSpec spec;
    spec.kind = trial % 2 ? TestSignalKind::chirp : TestSignalKind::bandlimited_random;
    spec.seed = rng.next();
    spec.rate = rng.uniform(-0.5, 0.5);
    spec.scale = rng.uniform(1.0, 2.0);
    spec.center = rng.uniform(-2.0, 2.0);
    spec.band_lo = -3.0;
    spec.band_hi = 3.0;
    const auto f = make_test_signal(spec, grid);
    const AngleParam a(testing::generic_angle(rng));
    const auto F = frft_fast(f, a);
    CHECK(std::abs(l2_norm(F) - l2_norm(f)) <= 1e-9 * l2_norm(f));
    const auto back = ifrft(F, a);
    CHECK(testing::l2_rel_err(back.values, f.values) <= 1e-9);
  }
}

TEST_CASE("orders add under composition", "[frft][property]") {
  testing::Rng rng(13);
  const auto grid = UniformGrid::centered(16.0, 4096);
  for (int trial = 0; trial < 6; ++trial) {
    TestSignalSpec spec;
    spec.kind = trial % 2 ? TestSignalKind::hermite : TestSignalKind::bandlimited_random;
    spec.seed = rng.next();
    spec.order = static_cast<int>(rng.integer(0, 6));
    spec.scale = rng.uniform(1.0, 2.0);
    spec.band_lo = -3.0;
    spec.band_hi = 3.0;
    const auto f = make_test_signal(spec, grid);
    const double a = rng.uniform(0.3, 1.2), b = rng.uniform(0.3, 1.2);
    const auto composed = frft_fast(as_signal(frft_fast(f, AngleParam(b))), AngleParam(a));
    const auto direct = frft_fast(f, AngleParam(a + b));
    CHECK(testing::l2_rel_err(composed.values, direct.values) <= 1e-10);
    CHECK_FALSE(direct.truncated());
  }
}

TEST_CASE("discontinuous inputs leave a cut spectrum", "[frft]") {
  TestSignalSpec spec;
  spec.kind = TestSignalKind::rectangle;
  spec.lo = -1.0;
  spec.hi = 1.0;
  const auto f = make_test_signal(spec, UniformGrid::centered(16.0, 4096));
  const auto F = frft_fast(f, AngleParam(kPi / 4));
  CHECK(F.truncated());
  // Energy beyond the output window is lost, so the discrete map is not unitary here.
  CHECK(l2_norm(F) < l2_norm(f));
}

TEST_CASE("linearity and conjugation symmetry", "[frft][property]") {
  testing::Rng rng(33);
  const auto grid = UniformGrid::centered(12.0, 1024);
  for (int trial = 0; trial < 8; ++trial) {
    const AngleParam a(testing::generic_angle(rng));
    const double s1 = rng.uniform(0.8, 1.6), s2 = rng.uniform(0.8, 1.6), c = rng.uniform(-2, 2);
    const Complex k1 = rng.complex(), k2 = rng.complex();
    const auto f = sample(grid, [&](double t) { return Complex(std::exp(-t * t / (2 * s1 * s1))); });
    const auto g = sample(grid, [&](double t) {
      return std::exp(-(t - c) * (t - c) / (2 * s2 * s2)) * std::polar(1.0, 0.3 * t * t);
    });
    std::vector<Complex> mix(grid.count()), gc(grid.count());
    for (std::size_t i = 0; i < mix.size(); ++i) {
      mix[i] = k1 * f.values[i] + k2 * g.values[i];
      gc[i] = std::conj(g.values[i]);
    }
    const auto Ff = frft_fast(f, a), Fg = frft_fast(g, a);
    const auto Fmix = frft_fast(SampledSignal(grid, mix), a);
    std::vector<Complex> want(grid.count());
    for (std::size_t i = 0; i < want.size(); ++i) want[i] = k1 * Ff.values[i] + k2 * Fg.values[i];
    CHECK(testing::rel_err(Fmix.values, want) <= 1e-12);

    const auto Fgc = frft_fast(SampledSignal(grid, gc), a);
    const auto Fneg = frft_fast(g, AngleParam(-a.alpha()));
    std::vector<Complex> conj_neg(Fneg.values);
    for (auto& z : conj_neg) z = std::conj(z);
    CHECK(testing::rel_err(Fgc.values, conj_neg) <= 1e-12);
  }
}

TEST_CASE("special angles return identity and parity", "[frft]") {
  const auto grid = UniformGrid::centered(4.0, 256);
  const auto f = sample(grid, [](double t) { return Complex(std::exp(-(t - 1) * (t - 1)), t); });
  const auto id = frft_fast(f, AngleParam(0.0));
  CHECK(testing::max_abs_diff(id.values, f.values) == 0.0);
  const auto id2 = frft_fast(f, AngleParam(2 * kPi));
  CHECK(testing::max_abs_diff(id2.values, f.values) == 0.0);
  const auto par = frft_fast(f, AngleParam(kPi));
  REQUIRE(par.values.size() == f.values.size());
  for (std::size_t i = 0; i < par.values.size(); ++i) {
    const double u = par.grid.at(i);
    const Complex want(std::exp(-(-u - 1) * (-u - 1)), -u);
    CHECK(std::abs(par.values[i] - want) <= 1e-15);
  }
}

TEST_CASE("undersampled chirps raise AliasError", "[frft]") {
  const auto grid = UniformGrid::centered(8.0, 256);
  const auto f = sample(grid, [](double t) { return Complex(std::exp(-t * t)); });
  CHECK_THROWS_AS(frft_fast(f, AngleParam(0.05)), AliasError);
  CHECK_NOTHROW(frft_fast(f, AngleParam(kPi / 2)));
}

TEST_CASE("truncated inputs carry a warning", "[frft]") {
  const auto grid = UniformGrid::centered(4.0, 512);
  const auto f = sample(grid, [](double) { return Complex(1.0); });
  const auto F = frft_fast(f, AngleParam(kPi / 2));
  CHECK(F.truncated());
  const auto wide = UniformGrid::centered(8.0, 512);
  const auto g = sample(wide, [](double t) { return Complex(std::exp(-0.5 * t * t)); });
  CHECK_FALSE(frft_fast(g, AngleParam(kPi / 2)).truncated());
  const auto narrow = sample(wide, [](double t) { return Complex(std::exp(-8 * t * t)); });
  const auto Fn = frft_fast(narrow, AngleParam(kPi / 2));
  CHECK(Fn.truncated());
  CHECK(Fn.diagnostics.front().find("output") != std::string::npos);
}

TEST_CASE("scaled Fourier sum matches the direct sum", "[chirp_z][property]") {
  testing::Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 700));
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, 900));
    std::vector<Complex> x(n);
    for (auto& z : x) z = rng.complex();
    const double t0 = rng.uniform(-5, 5), dt = rng.uniform(0.001, 0.1);
    const double w0 = rng.uniform(-20, 20), dw = rng.uniform(-0.2, 0.2);
    const auto got = scaled_fourier_sum(x, t0, dt, w0, dw, m);
    std::vector<Complex> want(m);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        want[k] += x[j] * std::polar(1.0, -(w0 + k * dw) * (t0 + j * dt));
      }
    }
    INFO("n = " << n << " m = " << m);
    CHECK(testing::max_abs_diff(got, want) <= 1e-10 * std::max(1.0, testing::max_abs(want)));
  }
}

TEST_CASE("dft matches the definition", "[chirp_z]") {
  testing::Rng rng(9);
  std::vector<Complex> x(37);
  for (auto& z : x) z = rng.complex();
  const auto y = dft(x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * std::polar(1.0, -2 * kPi * j * k / 37.0);
    CHECK(std::abs(y[k] - acc) <= 1e-12);
  }
}
