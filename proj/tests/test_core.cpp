#include "doctest.h"

#include "wstark/core.hpp"

#include <cmath>
#include <numbers>

using namespace wstark;

TEST_CASE("physical parameters reject invalid values") {
  CHECK_THROWS_AS(PhysicalParams(-0.1, 0.2, 4), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalParams(0.5, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalParams(0.5, 0.2, NAN), std::invalid_argument);
  const PhysicalParams p(0.5, 0.2, 4);
  CHECK(p.bloch_period() == doctest::Approx(2 * std::numbers::pi / 0.8).epsilon(1e-15));
}

TEST_CASE("band coefficients enforce hermiticity and zero mean") {
  CHECK_THROWS_AS(BandDispersion(4.0, {{0, Complex(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(BandDispersion(4.0, {{1, Complex(1, 1)}, {-1, Complex(1, 1)}}), std::invalid_argument);
  const BandDispersion filled(4.0, {{2, Complex(0.3, -0.4)}});
  CHECK(filled.coefficients().at(-2) == Complex(0.3, 0.4));
  CHECK(BandDispersion::sinusoidal(1.0, 4.0).sinusoidal_amplitude().value() == 1.0);
  CHECK_FALSE(filled.sinusoidal_amplitude().has_value());
  CHECK(BandDispersion::sinusoidal(0.0, 4.0).empty());
}

TEST_CASE("cosine band and its antiderivative") {
  const BandDispersion band = BandDispersion::sinusoidal(1.3, 4.0);
  for (double q : {-1.1, -0.2, 0.0, 0.37, 2.9}) {
    CHECK(band_eval(band, q) == doctest::Approx(1.3 * std::cos(4 * q)).epsilon(1e-14));
    CHECK(band_antiderivative(band, q) == doctest::Approx(1.3 * std::sin(4 * q) / 4).epsilon(1e-14));
  }
}

TEST_CASE("grid geometry") {
  const SpatialGrid g = make_grid(-8.0, 8.0, 64);
  CHECK(g.dx() == 0.25);
  CHECK(g.x(0) == -8.0);
  CHECK(g.x_max() == 8.0);
  CHECK(g.momentum(1) == doctest::Approx(2 * std::numbers::pi / 16));
  CHECK(g.momentum(32) == doctest::Approx(-g.nyquist()));
  CHECK(g.momentum(63) == doctest::Approx(-2 * std::numbers::pi / 16));
  CHECK(g.steps_in(4.0).value() == 16);
  CHECK_FALSE(g.steps_in(4.1).has_value());
  CHECK_THROWS_AS(make_grid(-8.0, 8.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8.0, -8.0, 64), std::invalid_argument);
}

TEST_CASE("continuous Fourier transform of a Gaussian") {
  // exp(-x^2/w^2) -> (w/sqrt2) exp(-q^2 w^2/4) under (2pi)^{-1/2} int e^{-iqx}
  const double w = 3, c = 1.5;
  const SpatialGrid g = make_grid(-40.0, 40.0, 1024);
  CVector<double> v(g.size());
  for (Eigen::Index j = 0; j < g.size(); ++j) v[j] = std::exp(-std::pow(g.x(j) - c, 2) / (w * w));
  const WaveFunction spectrum = dft(WaveFunction(g, v), Direction::forward);
  CHECK(spectrum.representation == Representation::momentum);
  double worst = 0;
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    const double q = g.momentum(k);
    const Complex exact = w / std::sqrt(2.0) * std::exp(-q * q * w * w / 4) * std::exp(Complex(0, -q * c));
    worst = std::max(worst, std::abs(spectrum.amplitudes[k] - exact));
  }
  CHECK(worst < 1e-13);
  const WaveFunction back = dft(spectrum, Direction::inverse);
  CHECK((back.amplitudes - v).norm() / v.norm() < 1e-14);
  CHECK_THROWS_AS(dft(spectrum, Direction::forward), std::invalid_argument);
}

TEST_CASE("norm, inner product, boundary leak") {
  const SpatialGrid g = make_grid(-10.0, 10.0, 256);
  CVector<double> v = CVector<double>::Constant(g.size(), Complex(0, 2));
  const WaveFunction psi = normalize(WaveFunction(g, v));
  CHECK(norm(psi) == doctest::Approx(1).epsilon(1e-15));
  CHECK(std::abs(inner_product(psi, psi) - 1.0) < 1e-14);
  // uniform density: outer 5% on each side -> ceil(12.8) = 13 samples each
  CHECK(boundary_leak(psi) == doctest::Approx(26.0 / 256).epsilon(1e-14));
  CHECK_THROWS_AS(normalize(WaveFunction(g)), std::invalid_argument);
  CHECK_THROWS_AS(inner_product(psi, WaveFunction(make_grid(-10.0, 10.0, 128))), std::invalid_argument);
}

TEST_CASE("single-precision instantiation") {
  const BasicSpatialGrid<float> g = make_grid(-4.0f, 4.0f, 32);
  BasicWaveFunction<float> psi(g, CVector<float>::Ones(32));
  CHECK(norm(psi) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-6));
}
