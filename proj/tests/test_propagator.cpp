#include "doctest.h"

#include "wstark/propagator.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace wstark;

namespace {

constexpr double kPi = std::numbers::pi;
const PhysicalParams kParams(0.5, 0.2, 4.0);
const double kTB = kParams.bloch_period();

const RhoTable& table() {
  static const RhoTable t = compute_rho(kParams, BandDispersion::sinusoidal(1.0, 4.0));
  return t;
}

// J_n(z) for any integer n and real z, from the libstdc++ implementation
double bessel_ref(int n, double z) {
  const int m = std::abs(n);
  double v = std::cyl_bessel_j(double(m), std::abs(z));
  if (m % 2 == 1 && (n < 0) != (z < 0)) v = -v;
  return v;
}

// Free propagator of eps p^2 (mass 1/(2 eps)) dressed by the linear potential
Complex stark_oracle(double eps, double F, double x, double y, double t) {
  const Complex i(0, 1);
  return std::sqrt(1.0 / (4 * kPi * i * eps * t)) *
         std::exp(i * (x - y) * (x - y) / (4 * eps * t) - i * F * t * (x + y) / 2.0 - i * eps * F * F * t * t * t / 12.0);
}

}  // namespace

TEST_CASE("G_l series matches the Bessel closed form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick(0, 2 * kTB);
  const double s0sq = table().s0 * table().s0;
  for (int trial = 0; trial < 20; ++trial) {
    const double t = pick(rng), phi = 0.8 * t;
    const double z = 2 * 1.0 / 0.8 * std::sin(phi / 2);
    const WeightSequence g = g_weights(table(), t);
    CHECK(g.kind == WeightKind::G);
    CHECK(g.l_max == 2 * table().n_max);
    for (int l = -20; l <= 20; ++l) {
      const Complex expected = s0sq * bessel_ref(-l, z) * std::exp(Complex(0, l * (kPi + phi) / 2));
      CHECK(std::abs(g(l) - expected) < 1e-12);
    }
  }
}

TEST_CASE("Lambda_l is unitary and collapses at Bloch times") {
  for (double t : {0.3, 2.0, 0.5 * kTB, 1.37 * kTB}) {
    const WeightSequence w = lambda_weights(table(), t);
    CHECK(w.kind == WeightKind::Lambda);
    for (int m = -6; m <= 6; ++m) {
      Complex sum{};
      for (int l = -w.l_max; l <= w.l_max; ++l) sum += w(l) * std::conj(w(l - m));
      CHECK(std::abs(sum - (m == 0 ? 1.0 : 0.0)) < 1e-13);
    }
  }
  const WeightSequence at_tb = lambda_weights(table(), 2 * kTB, WeightMethod::closed_form);
  CHECK(std::abs(at_tb(0) - 1.0) < 1e-13);
  CHECK(at_tb.effective_l_max() == 0);
}

TEST_CASE("closed form needs a cosine band") {
  const RhoTable general = compute_rho(kParams, BandDispersion(4.0, {{1, Complex(0.5)}, {2, Complex(0.2)}}));
  CHECK_NOTHROW(g_weights(general, 1.0));
  CHECK_THROWS_AS(g_weights(general, 1.0, WeightMethod::closed_form), std::invalid_argument);
}

TEST_CASE("Stark kernel") {
  for (auto [x, y, t] : {std::tuple{0.0, 0.0, 1.0}, std::tuple{3.0, -1.0, 0.4}, std::tuple{-7.0, 2.5, 9.0}})
    CHECK(std::abs(kernel_stark(kParams, x, y, t) - stark_oracle(0.5, 0.2, x, y, t)) < 1e-13);
}

TEST_CASE("general kernel reduces to Stark for a flat band and at Bloch times") {
  const RhoTable flat = compute_rho(kParams, BandDispersion(4.0));
  CHECK(std::abs(kernel_general(flat, 1.0, -2.0, 0.7) - stark_oracle(0.5, 0.2, 1.0, -2.0, 0.7)) < 1e-12);
  CHECK(std::abs(kernel_general(table(), 1.0, -2.0, kTB) - stark_oracle(0.5, 0.2, 1.0, -2.0, kTB)) < 1e-12);
  CHECK_THROWS(kernel_general(table(), 0.0, 0.0, 0.0));
}

TEST_CASE("eps = 0 shift map") {
  const PhysicalParams p0(0.0, 0.2, 4.0);
  const CoefficientTable sigma = compute_sigma(p0, BandDispersion::sinusoidal(1.0, 4.0));
  const ShiftMap at_tb = eps0_shift_map(sigma, kTB);
  CHECK(std::abs(at_tb(0) - 1.0) < 1e-13);
  CHECK(at_tb.phase_rate == doctest::Approx(0.2 * kTB));
  const ShiftMap m = eps0_shift_map(sigma, 2.2);
  double total = 0;
  for (int l = -m.l_max; l <= m.l_max; ++l) total += std::norm(m(l));
  CHECK(total == doctest::Approx(1).epsilon(1e-13));
}

TEST_CASE("Phi integral: quadrature agrees with the closed form") {
  for (auto [x, t] : {std::pair{1.0, 1.0}, std::pair{-2.0, 1.5}}) {
    const PhiValue closed = phi_integral(kParams, x, t, PhiMethod::closed);
    const PhiValue quad = phi_integral(kParams, x, t, PhiMethod::quadrature);
    CHECK(std::abs(closed.value - quad.value) < 1e-6);
    CHECK(quad.residual < 1e-4);
    CHECK(closed.residual == 0);
  }
  CHECK_THROWS_AS(phi_integral(kParams, 1.0, 1.0, PhiMethod::quadrature, 1e-14), ConvergenceError);
}
