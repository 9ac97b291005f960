#include "doctest.h"

#include "wstark/initial_states.hpp"
#include "wstark/observables.hpp"

#include <cmath>

using namespace wstark;

namespace {

const PhysicalParams kParams(0.5, 0.2, 4.0);
const SpatialGrid kGrid = make_grid(-64.0, 64.0, 2048);

WaveFunction gaussian(double center, double w, double k0 = 0) {
  CVector<double> v(kGrid.size());
  for (Eigen::Index j = 0; j < kGrid.size(); ++j) {
    const double x = kGrid.x(j);
    v[j] = std::exp(-std::pow(x - center, 2) / (w * w)) * std::exp(Complex(0, k0 * x));
  }
  return normalize(WaveFunction(kGrid, v));
}

}  // namespace

TEST_CASE("Gaussian moments") {
  // |exp(-x^2/w^2)|^2 has standard deviation w/2
  const WaveFunction psi = gaussian(3.0, 5.0, 0.4);
  CHECK(centroid(psi) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(width(psi) == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(mean_momentum(psi) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("revival probability of displaced Gaussians") {
  const WaveFunction a = gaussian(0.0, 5.0), b = gaussian(4.0, 5.0);
  CHECK(revival_probability(a, a) == doctest::Approx(1).epsilon(1e-14));
  CHECK(revival_probability(a, b) == doctest::Approx(std::exp(-16.0 / 25.0)).epsilon(1e-12));
}

TEST_CASE("parabolic reference") {
  CHECK(parabolic_reference(kParams, 1.0, 0.5, 2.0) == doctest::Approx(1.0 + 2 * 0.5 * 0.5 * 2 - 0.5 * 0.2 * 4));
  const double tb = kParams.bloch_period();
  CHECK(parabolic_reference(kParams, 0, 0, tb) == doctest::Approx(-6.1685027506808487).epsilon(1e-14));
}

TEST_CASE("non-normalizable states are rejected") {
  const SpatialGrid g = make_grid(-512.0, 512.0, 8192);
  const WaveFunction airy = build_initial({InitialKind::airy_ideal}, g, kParams);
  CHECK_THROWS_AS(centroid(airy), std::invalid_argument);
  CHECK_THROWS_AS(width(airy), std::invalid_argument);
  CHECK_THROWS_AS(revival_probability(airy, airy), std::invalid_argument);

  TrajectoryRecord record;
  append_sample(record, airy, 0.0, airy);
  CHECK(std::isnan(record.centroid[0]));
  CHECK(std::isnan(record.revival[0]));
  CHECK(record.norm[0] == doctest::Approx(1));
}

TEST_CASE("trajectory from a time series") {
  EvolutionSpec spec{kParams, BandDispersion(4.0), Engine::characteristics, 0, {0.0, 1.0, 2.0}};
  const WaveFunction psi0 = gaussian(0.0, 5.0);
  const TrajectoryRecord r = make_trajectory(evolve(spec, psi0), psi0, "characteristics", "unit");
  REQUIRE(r.times.size() == 3);
  CHECK(r.engine == "characteristics");
  CHECK(r.scenario == "unit");
  CHECK(r.revival[0] == doctest::Approx(1));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(r.centroid[k] == doctest::Approx(parabolic_reference(kParams, 0, 0, r.times[k])).epsilon(1e-10));
    CHECK(r.norm[k] == doctest::Approx(1).epsilon(1e-13));
  }
  CHECK(r.width[2] > r.width[1]);
  CHECK(r.width[1] > r.width[0]);
}
