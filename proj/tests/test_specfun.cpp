#include "doctest.h"

#include "wstark/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

using wstark::airy_ai;
using wstark::bessel_j;

namespace {

struct Sample {
  double x;
  double value;
};

// mpmath at 40 digits, rounded to double
const Sample kAiry[] = {
    {-40, -0.045933923437957249632},   {-25.5, -0.24407246181912132932}, {-12.25, -0.26764469882714229824},
    {-8.5, -0.33029023763020887902},   {-7.25, 0.32374057321118614622},  {-5, 0.35076100902411431979},
    {-1, 0.5355608832923521188},       {0, 0.35502805388781723926},      {0.5, 0.23169360648083348977},
    {1, 0.13529241631288141552},       {2.5, 0.015725923380470489995},   {4, 0.00095156385120480187362},
    {5, 0.00010834442813607441735},    {6.5, 2.7958823432049135855e-6},  {7.5, 1.9172560675134307516e-7},
    {9, 2.4711684308724898433e-9},     {10, 1.1047532552898685934e-10},  {12, 1.393184688875360839e-13},
    {15, 2.164962520737992299e-18},    {20, 1.6916728686705403136e-27},
};

struct BesselSample {
  int n;
  double x;
  double value;
};

const BesselSample kBessel[] = {
    {0, 1.25, 0.64590608527128526495},   {1, 1.25, 0.51062326031988046707},
    {5, 1.25, 0.00074440885254749807277}, {20, 1.25, 3.3372897667043752583e-23},
    {0, 10, -0.2459357644513483352},     {3, 10, 0.058379379305186812343},
    {10, 10, 0.2074861066333588577},     {30, 10, 1.5510960782574670069e-12},
    {0, 50, 0.055812327669251815005},    {7, 50, 0.060491201259537108376},
    {50, 50, 0.12140902189761506382},    {80, 50, 2.8051557721833452316e-11},
    {200, 50, 2.1383690042391173681e-97}, {2, 0.001, 1.2499998958333366406e-7},
    {40, -1.25, 8.3064879993211864056e-57}, {13, -2.5, -2.6115447183637898425e-9},
};

}  // namespace

TEST_CASE("Ai against high-precision reference values") {
  for (const auto& s : kAiry) {
    CAPTURE(s.x);
    const double tol = s.x < -8 ? 1e-13 : 1e-14;
    if (std::abs(s.value) > 1e-3)
      CHECK(std::abs(airy_ai(s.x) - s.value) < tol);
    else
      CHECK(std::abs(airy_ai(s.x) - s.value) < 1e-12 * std::abs(s.value));
  }
  CHECK(std::abs(airy_ai(-2.3381074104597670385)) < 1e-15);
}

TEST_CASE("Ai against Boost") {
  for (double x = -30; x <= 10; x += 0.0917) {
    CAPTURE(x);
    const double ref = boost::math::airy_ai(x);
    CHECK(std::abs(airy_ai(x) - ref) < 1e-12 * std::max(1.0, std::abs(x)) * std::max(std::abs(ref), 1e-3));
  }
}

TEST_CASE("Ai branches meet continuously") {
  using namespace wstark::detail;
  for (double x = -9.5; x <= -7.5; x += 0.05)
    CHECK(std::abs(airy_ai_maclaurin(x) - airy_ai_asymptotic_negative(x)) < 1e-12);
  for (double x = 7.0; x <= 8.5; x += 0.05)
    CHECK(std::abs(airy_ai_maclaurin(x) / airy_ai_asymptotic_positive(x) - 1) < 1e-10);
  CHECK(std::isnan(airy_ai(NAN)));
  CHECK(airy_ai(1e6) == 0.0);
}

TEST_CASE("J_n against high-precision reference values") {
  for (const auto& s : kBessel) {
    CAPTURE(s.n);
    CAPTURE(s.x);
    CHECK(std::abs(bessel_j(s.n, s.x) - s.value) < 1e-14 * std::max(1.0, std::abs(s.value)) + 1e-12 * std::abs(s.value));
  }
}

TEST_CASE("J_n against Boost") {
  for (int n = 0; n <= 60; n += 3)
    for (double x : {0.01, 0.7, 1.25, 4.0, 11.3, 35.0, 80.0}) {
      CAPTURE(n);
      CAPTURE(x);
      const double ref = boost::math::cyl_bessel_j(n, x);
      CHECK(std::abs(bessel_j(n, x) - ref) < 1e-13 + 1e-11 * std::abs(ref));
    }
}

TEST_CASE("J_n symmetries and sequence") {
  CHECK(bessel_j(-3, 2.0) == -bessel_j(3, 2.0));
  CHECK(bessel_j(-4, 2.0) == bessel_j(4, 2.0));
  CHECK(bessel_j(3, -2.0) == -bessel_j(3, 2.0));
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(5, 0.0) == 0.0);
  const auto seq = wstark::bessel_j_sequence(30, 7.5);
  for (int n = 0; n <= 30; ++n) CHECK(seq[n] == doctest::Approx(bessel_j(n, 7.5)).epsilon(1e-14));
  CHECK_THROWS_AS(bessel_j(10001, 1.0), std::out_of_range);
  CHECK_THROWS_AS(wstark::bessel_j_sequence(-1, 1.0), std::out_of_range);
}

TEST_CASE("single precision") {
  CHECK(airy_ai(1.0f) == doctest::Approx(0.13529241631288141552).epsilon(1e-6));
  CHECK(bessel_j(1, 1.25f) == doctest::Approx(0.51062326031988046707).epsilon(1e-6));
}
