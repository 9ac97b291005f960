#include "doctest.h"

#include "wstark/eigenfunctions.hpp"
#include "wstark/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>

using namespace wstark;

namespace {

const PhysicalParams kParams(0.5, 0.2, 4.0);

double bessel_ref(int n, double x) { return boost::math::cyl_bessel_j(n, x); }

}  // namespace

TEST_CASE("cosine band: rho_n is a scaled Bessel function") {
  const RhoTable t = compute_rho(kParams, BandDispersion::sinusoidal(1.0, 4.0));
  CHECK(t.alpha == doctest::Approx(std::cbrt(0.4)).epsilon(1e-15));
  CHECK(t.s0 * t.s0 == doctest::Approx(2.714417616594907).epsilon(1e-14));
  CHECK(t.n_max >= 10);
  for (int n = -40; n <= 40; ++n) {
    CAPTURE(n);
    CHECK(std::abs(t(n) - t.s0 * bessel_ref(n, -1.25)) < 1e-13);
  }
}

TEST_CASE("two-harmonic band against a Bessel product series") {
  // exp(i (a sin u + b sin 2u)) = sum_{m,k} J_m(a) J_k(b) e^{i(m + 2k)u}
  const double k1 = 0.8, k2 = 0.5, F = 0.2, d = 4;
  const BandDispersion band(d, {{1, Complex(k1 / 2)}, {2, Complex(k2 / 2)}});
  const CoefficientTable c = band_coefficients(PhysicalParams(0.5, F, d), band);
  const double a = k1 / (F * d), b = k2 / (2 * F * d);
  for (int n = -25; n <= 25; ++n) {
    double expected = 0;
    for (int k = -60; k <= 60; ++k) expected += bessel_ref(-n - 2 * k, a) * bessel_ref(k, b);
    CAPTURE(n);
    CHECK(std::abs(c(n) - expected) < 1e-13);
  }
  CHECK(c.values.squaredNorm() == doctest::Approx(1).epsilon(1e-13));
}

TEST_CASE("empty band collapses to a single Airy term") {
  const RhoTable t = compute_rho(kParams, BandDispersion(4.0));
  CHECK(t.n_max == 0);
  CHECK(std::abs(t(0) - t.s0) < 1e-15);
  const EigenfunctionSpec spec(t, 0.3);
  for (double x : {-10.0, -1.0, 0.0, 2.0}) {
    const double expected = t.s0 * airy_ai(t.alpha * (x - 0.3 / 0.2));
    CHECK(std::abs(eigenfunction_eval(spec, x) - expected) < 1e-14);
  }
}

TEST_CASE("orthonormality sums") {
  const RhoTable t = compute_rho(kParams, BandDispersion::sinusoidal(1.0, 4.0));
  CHECK(std::abs(omega(t, 0) - t.s0 * t.s0) < 1e-13);
  for (int l = 1; l <= 40; ++l) {
    CHECK(std::abs(omega(t, l)) < 1e-14);
    CHECK(std::abs(omega(t, -l)) < 1e-14);
  }
}

TEST_CASE("sigma coefficients") {
  const PhysicalParams p0(0.0, 0.2, 4.0);
  const CoefficientTable s = compute_sigma(p0, BandDispersion::sinusoidal(1.0, 4.0));
  CHECK(s.values.squaredNorm() == doctest::Approx(1 / 0.2).epsilon(1e-13));
  for (int n = -20; n <= 20; ++n) CHECK(std::abs(s(n) - bessel_ref(n, -1.25) / std::sqrt(0.2)) < 1e-13);
  CHECK_THROWS_AS(compute_rho(p0, BandDispersion::sinusoidal(1.0, 4.0)), std::invalid_argument);
  CHECK_THROWS_AS(compute_rho(kParams, BandDispersion::sinusoidal(1.0, 4.0), 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(compute_rho(kParams, BandDispersion::sinusoidal(1.0, 4.0), 0.0), std::invalid_argument);
}

TEST_CASE("spectrum function") {
  const RhoTable t = compute_rho(kParams, BandDispersion::sinusoidal(1.0, 4.0));
  CHECK(std::abs(spectrum_S(t, 0) - t.s0) < 1e-15);
  for (double q : {-0.3, 0.1, 0.7}) {
    CHECK(std::abs(spectrum_S(t, q) - spectrum_S(t, q + 2 * std::numbers::pi / 4)) < 1e-13);
    CHECK(std::abs(spectrum_S(t, q)) == doctest::Approx(t.s0).epsilon(1e-14));
    const Complex expected = t.s0 * std::exp(Complex(0, std::sin(4 * q) / (0.2 * 4)));
    CHECK(std::abs(spectrum_S(t, q) - expected) < 1e-13);
  }
}

TEST_CASE("large force-to-band ratio needs many orders") {
  const PhysicalParams weak(0.5, 0.01, 4.0);
  const CoefficientTable c = band_coefficients(weak, BandDispersion::sinusoidal(1.0, 4.0));
  CHECK(c.n_max > 25);
  CHECK(std::abs(c(20) - bessel_ref(20, -25.0)) < 1e-13);
  const PhysicalParams extreme(0.5, 1e-6, 4.0);
  CHECK_THROWS_AS(band_coefficients(extreme, BandDispersion::sinusoidal(1.0, 4.0)), ConvergenceError);
}
