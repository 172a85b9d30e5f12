#include <boost/math/quadrature/gauss.hpp>

#include "fracmra/errors.hpp"
#include "fracmra/systems.hpp"
#include "support.hpp"

using namespace fracmra;
using testing::kPi;

namespace {

const std::vector<double> kAngles = {kPi / 6, kPi / 4, kPi / 3, kPi / 2, 2 * kPi / 3};

// <phi_n, phi_m> for phi = B(t) exp(-i t^2 cot / 2) written out from the
// translate definition, integrated on unit panels.
Complex literal_inner(int order, double cot, int n, int m) {
  auto b = [order](double t) {
    if (t < 0 || t >= order) return 0.0;
    if (order == 1) return 1.0;
    // hat
    return t < 1 ? t : 2 - t;
  };
  auto integrand = [&](double t) {
    const double phase = -0.5 * cot * ((t - n) * (t - n) - (t - m) * (t - m)) - (t * n + n * n) * cot +
                         (t * m + m * m) * cot;
    return b(t - n) * b(t - m) * std::polar(1.0, phase);
  };
  using boost::math::quadrature::gauss;
  Complex acc = 0.0;
  const int lo = std::max(n, m), hi = std::min(n, m) + order;
  for (int k = lo; k < hi; ++k) {
    for (int s = 0; s < 8; ++s) {
      const double a = k + s / 8.0;
      acc += Complex(gauss<double, 20>::integrate([&](double t) { return integrand(t).real(); }, a, a + 0.125),
                     gauss<double, 20>::integrate([&](double t) { return integrand(t).imag(); }, a, a + 0.125));
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("Haar translates are orthonormal at every angle", "[systems][oracle]") {
  for (double alpha : kAngles) {
    const AngleParam a(alpha);
    const auto phi = make_scaling("haar", a);
    const auto g = gram_matrix(phi, a);
    CHECK(g.method == GramMethod::time_quadrature);
    CHECK(g.identity_defect() <= 1e-10);
    const auto gf = gram_matrix(phi, a, 4, GramMethod::frequency_quadrature);
    CHECK(gf.identity_defect() <= 1e-3);
  }
}

TEST_CASE("Shannon translates are orthonormal at every angle", "[systems][oracle]") {
  for (double alpha : kAngles) {
    const AngleParam a(alpha);
    const auto g = gram_matrix(make_scaling("shannon", a), a);
    CHECK(g.method == GramMethod::frequency_quadrature);
    CHECK(g.identity_defect() <= 1e-10);
  }
}

TEST_CASE("hat-function Gram entries are 2/3 and 1/6 with chirp phases", "[systems][oracle]") {
  for (double alpha : kAngles) {
    const AngleParam a(alpha);
    const auto g = gram_matrix(make_scaling("bspline2", a), a);
    for (int n = -8; n <= 8; ++n) {
      for (int m = -8; m <= 8; ++m) {
        const double want_mod = n == m ? 2.0 / 3.0 : (std::abs(n - m) == 1 ? 1.0 / 6.0 : 0.0);
        CHECK(std::abs(std::abs(g.at(n, m)) - want_mod) <= 1e-12);
        if (std::abs(n - m) <= 1 && std::abs(n) <= 3 && std::abs(m) <= 3) {
          CHECK(std::abs(g.at(n, m) - literal_inner(2, a.cot_alpha(), n, m)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("time and frequency Gram routes agree", "[systems][property]") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const AngleParam a(testing::generic_angle(rng));
    for (const char* name : {"bspline2", "bspline3", "bspline4"}) {
      const auto phi = make_scaling(name, a);
      const auto t = gram_matrix(phi, a, 3, GramMethod::time_quadrature);
      const auto f = gram_matrix(phi, a, 3, GramMethod::frequency_quadrature);
      CHECK(testing::max_abs_diff(t.entries, f.entries) <= 1e-8);
    }
  }
}

TEST_CASE("fractional Gram moduli equal classical Gram moduli of the demodulated function",
          "[systems][property]") {
  const AngleParam quarter(kPi / 2);
  for (double alpha : {kPi / 6, kPi / 3, 2.0, -0.9}) {
    const AngleParam a(alpha);
    for (const char* name : {"haar", "shannon", "bspline2", "bspline3"}) {
      const auto phi = make_scaling(name, a);
      const auto frac = gram_matrix(phi, a, 4);
      const auto cls = gram_matrix(demodulate(phi, a), quarter, 4);
      double worst = 0.0;
      for (std::size_t i = 0; i < frac.entries.size(); ++i) {
        worst = std::max(worst, std::abs(std::abs(frac.entries[i]) - std::abs(cls.entries[i])));
      }
      INFO(name << " at " << alpha);
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("translates and dilates preserve the norm", "[systems][property]") {
  testing::Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const AngleParam a(testing::generic_angle(rng));
    const auto phi = make_scaling(trial % 2 ? "bspline3" : "haar", a);
    const double base = l2_norm(phi);
    const int n = rng.integer(-20, 20), j = rng.integer(-3, 4), k = rng.integer(-10, 10);
    CHECK(std::abs(l2_norm(chirp_translate(phi, n, a)) - base) <= 1e-10);
    CHECK(std::abs(l2_norm(dilate_translate(phi, j, k, a)) - base) <= 1e-10);
  }
}

TEST_CASE("atoms follow their defining formulas", "[systems]") {
  const AngleParam a(0.8);
  const double c = a.cot_alpha();
  const auto phi = make_scaling("bspline2", a);
  const auto t1 = chirp_translate(phi, 3, a);
  const auto d1 = dilate_translate(phi, 2, -1, a);
  for (double t : {-0.3, 0.4, 1.1, 2.6, 3.5, 4.2}) {
    const Complex want_t = eval_function(phi, t - 3) * std::polar(1.0, -(3 * t + 9) * c);
    CHECK(std::abs(eval_function(t1, t) - want_t) <= 1e-13);
    const double s = 4 * t + 1, centre = -0.25;
    const Complex want_d =
        2.0 * eval_function(phi, s) * std::polar(1.0, -0.5 * (t * t - centre * centre - s * s) * c);
    CHECK(std::abs(eval_function(d1, t) - want_d) <= 1e-13);
  }
  // j = k = 0 leaves phi unchanged.
  const auto same = dilate_translate(phi, 0, 0, a);
  for (double t : {0.2, 1.7}) CHECK(std::abs(eval_function(same, t) - eval_function(phi, t)) <= 1e-15);
}

TEST_CASE("system errors", "[systems]") {
  const auto phi = make_scaling("haar", AngleParam(1.0));
  CHECK_THROWS_AS(gram_matrix(phi, AngleParam(kPi)), SpecialAngleError);
  CHECK_THROWS_AS(chirp_translate(phi, 1, AngleParam(0.0)), SpecialAngleError);
  CHECK_THROWS_AS(gram_matrix(phi, AngleParam(1.0), -1), SpecError);
  const auto shannon = make_scaling("shannon", AngleParam(1.0));
  CHECK_THROWS_AS(gram_matrix(shannon, AngleParam(1.0), 2, GramMethod::time_quadrature), SpecError);
}
