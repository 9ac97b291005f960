#include "doctest.h"

#include "wstark/evolve.hpp"
#include "wstark/initial_states.hpp"

#include <cmath>
#include <numbers>

using namespace wstark;

namespace {

constexpr double kPi = std::numbers::pi;
const PhysicalParams kParams(0.5, 0.2, 4.0);
const double kTB = kParams.bloch_period();

BandDispersion cosine() { return BandDispersion::sinusoidal(1.0, 4.0); }

// Unit-norm exp(-x^2/w^2) evolved under eps p^2 + F x, written out in closed form
WaveFunction analytic_gaussian(const SpatialGrid& grid, double eps, double F, double w, double t) {
  const Complex i(0, 1);
  const Complex s = w * w + 4.0 * i * eps * t;
  CVector<double> v(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j), y = x + eps * F * t * t;
    v[j] = std::pow(2 / (kPi * w * w), 0.25) * std::sqrt(w * w / s) * std::exp(-y * y / s) *
           std::exp(-i * F * t * x - i * eps * F * F * t * t * t / 3.0);
  }
  return WaveFunction(grid, v);
}

const SpatialGrid& grid() {
  static const SpatialGrid g = make_grid(-192.0, 64.0, 4096);
  return g;
}

WaveFunction packet() { return build_initial({}, grid(), kParams); }

}  // namespace

TEST_CASE("engine names") {
  for (Engine e : {Engine::splitstep, Engine::characteristics, Engine::replica, Engine::kernel_quadrature,
                   Engine::eps0_map})
    CHECK(parse_engine(to_string(e)) == e);
  CHECK_THROWS_AS(parse_engine("rk4"), std::invalid_argument);
}

TEST_CASE("flat band: exact engines reproduce the closed-form Gaussian") {
  const BandDispersion flat(4.0);
  for (double t : {0.5, kTB, 2.5 * kTB}) {
    CAPTURE(t);
    const WaveFunction exact = analytic_gaussian(grid(), 0.5, 0.2, 5, t);
    CHECK(l2_distance(detail::characteristics_evolve(packet(), kParams, flat, t), exact) < 1e-12);
    CHECK(l2_distance(evolve_stark_exact(kParams, packet(), t), exact) < 1e-12);
  }
}

TEST_CASE("flat band: split-step converges to the closed form at second order") {
  const WaveFunction exact = analytic_gaussian(grid(), 0.5, 0.2, 5, kTB);
  EvolutionSpec spec{kParams, BandDispersion(4.0), Engine::splitstep, 0.01, {kTB}};
  const TimeSeries coarse = evolve_splitstep(spec, packet());
  spec.dt = 0.005;
  const TimeSeries fine = evolve_splitstep(spec, packet());
  const double e1 = l2_distance(coarse.states.front(), exact), e2 = l2_distance(fine.states.front(), exact);
  CHECK(e2 < 1e-6);
  CHECK(e1 / e2 == doctest::Approx(4).epsilon(0.05));
  CHECK(fine.dt_used <= 0.005);
}

TEST_CASE("cosine band: engines agree") {
  EvolutionSpec spec{kParams, cosine(), Engine::characteristics, kTB / 4000, {kTB / 4, kTB}};
  const TimeSeries c = evolve(spec, packet());
  spec.engine = Engine::replica;
  const TimeSeries r = evolve(spec, packet());
  spec.engine = Engine::splitstep;
  const TimeSeries s = evolve(spec, packet());
  for (int k = 0; k < 2; ++k) {
    CHECK(l2_distance(c.states[k], r.states[k]) < 1e-12);
    CHECK(l2_distance(c.states[k], s.states[k]) < 1e-6);
  }
  // stroboscopic coincidence with the flat-band evolution
  CHECK(l2_distance(r.states[1], analytic_gaussian(grid(), 0.5, 0.2, 5, kTB)) < 1e-12);
}

TEST_CASE("split-step automatic step is certified") {
  EvolutionSpec spec{kParams, cosine(), Engine::splitstep, 0, {kTB / 2}};
  const TimeSeries s = evolve_splitstep(spec, packet());
  CHECK(s.dt_used <= kTB / 2000 + 1e-15);
  CHECK(s.dt_error < 1e-6);
  const WaveFunction c = detail::characteristics_evolve(packet(), kParams, cosine(), kTB / 2);
  CHECK(l2_distance(s.states.front(), c) < 1e-6);
}

TEST_CASE("observer receives states instead of the series") {
  int calls = 0;
  double last = -1;
  EvolutionSpec spec{kParams, cosine(), Engine::replica, 0, {0.0, 1.0, 2.0}};
  spec.observer = [&](double t, const WaveFunction& psi) {
    ++calls;
    last = t;
    CHECK(norm(psi) == doctest::Approx(1).epsilon(1e-12));
  };
  const TimeSeries s = evolve(spec, packet());
  CHECK(calls == 3);
  CHECK(last == 2.0);
  CHECK(s.states.empty());
  CHECK(s.times.size() == 3);
}

TEST_CASE("kernel quadrature on a small grid") {
  const SpatialGrid g = make_grid(-64.0, 64.0, 2048);
  const WaveFunction psi0 = build_initial({}, g, kParams);
  EvolutionSpec spec{kParams, cosine(), Engine::kernel_quadrature, 0, {}};
  const WaveFunction k = evolve_kernel_quadrature(spec, psi0, 3.0);
  const WaveFunction c = detail::characteristics_evolve(psi0, kParams, cosine(), 3.0);
  CHECK(l2_distance(k, c) < 1e-8);
  CHECK_THROWS_AS(evolve_kernel_quadrature(spec, psi0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(evolve_kernel_quadrature(spec, packet(), 3.0), std::invalid_argument);
}

TEST_CASE("eps = 0 map: density returns every Bloch period") {
  const PhysicalParams p0(0.0, 0.2, 4.0);
  const SpatialGrid g = make_grid(-128.0, 128.0, 4096);
  const WaveFunction psi0 = build_initial({}, g, p0);
  EvolutionSpec spec{p0, cosine(), Engine::eps0_map, 0, {kTB / 2, kTB, 3 * kTB}};
  const TimeSeries s = evolve(spec, psi0);
  const Eigen::VectorXd rho0 = psi0.amplitudes.cwiseAbs2();
  CHECK((s.states[0].amplitudes.cwiseAbs2() - rho0).cwiseAbs().sum() * g.dx() > 1e-2);
  CHECK((s.states[1].amplitudes.cwiseAbs2() - rho0).cwiseAbs().sum() * g.dx() < 1e-12);
  CHECK((s.states[2].amplitudes.cwiseAbs2() - rho0).cwiseAbs().sum() * g.dx() < 1e-12);
  // the wave function itself picks up exp(-i F T_B x)
  const CVector<double> phase = (-Complex(0, 1) * 0.2 * kTB * g.positions().cast<Complex>().array()).exp().matrix();
  CHECK((s.states[1].amplitudes - phase.cwiseProduct(psi0.amplitudes)).norm() * std::sqrt(g.dx()) < 1e-12);
}

TEST_CASE("engine and parameter compatibility") {
  const PhysicalParams p0(0.0, 0.2, 4.0);
  const WaveFunction psi0 = build_initial({}, make_grid(-128.0, 128.0, 4096), p0);
  EvolutionSpec spec{p0, cosine(), Engine::replica, 0, {1.0}};
  CHECK_THROWS_AS(evolve(spec, psi0), std::invalid_argument);
  spec = EvolutionSpec{kParams, cosine(), Engine::eps0_map, 0, {1.0}};
  CHECK_THROWS_AS(evolve(spec, packet()), std::invalid_argument);
  CHECK_THROWS_AS(lattice_steps(make_grid(0.0, 10.0, 64), 4.0), std::invalid_argument);
  CHECK(lattice_steps(grid(), 4.0) == 64);
}

TEST_CASE("guards: momentum box and boundary leak") {
  CHECK_NOTHROW(detail::check_momentum_box(packet(), 0.2, 4 * kTB));
  CHECK_THROWS_AS(detail::check_momentum_box(packet(), 0.2, 300.0), Error);
  InitialStateSpec near_edge;
  near_edge.center = -12;
  EvolutionSpec spec{kParams, cosine(), Engine::splitstep, 0.05, {3 * kTB}};
  const WaveFunction psi0 = build_initial(near_edge, make_grid(-48.0, 48.0, 512), kParams);
  CHECK_THROWS_AS(evolve_splitstep(spec, psi0), Error);
}

TEST_CASE("replicate shifts by whole lattice periods") {
  CVector<double> in = CVector<double>::Zero(16);
  in[3] = 1.0;
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(3);
  w[2] = Complex(0, 1);  // l = +1
  const CVector<double> out = detail::replicate(in, w, 1, 4);
  CHECK(out[7] == Complex(0, 1));
  CHECK(out.cwiseAbs().sum() == doctest::Approx(1.0));
}
