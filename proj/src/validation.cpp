#include "wstark/validation.hpp"

#include "wstark/eigenfunctions.hpp"
#include "wstark/evolve.hpp"
#include "wstark/initial_states.hpp"
#include "wstark/observables.hpp"
#include "wstark/propagator.hpp"
#include "wstark/specfun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

namespace wstark {

namespace {

constexpr double kPi = std::numbers::pi;

// Reference setting of the accelerated-oscillation scenario.
const PhysicalParams kParams(0.5, 0.2, 4.0);
const PhysicalParams kParamsEps0(0.0, 0.2, 4.0);
const double kTB = kParams.bloch_period();

BandDispersion cosine_band() { return BandDispersion::sinusoidal(1.0, 4.0); }
BandDispersion flat_band() { return BandDispersion(4.0); }

const RhoTable& rho_table() {
  static const RhoTable table = compute_rho(kParams, cosine_band());
  return table;
}

const SpatialGrid& packet_grid() {
  static const SpatialGrid grid = make_grid(-192.0, 64.0, 4096);
  return grid;
}

const WaveFunction& packet() {
  static const WaveFunction psi = build_initial({}, packet_grid(), kParams);
  return psi;
}

const SpatialGrid& eps0_grid() {
  static const SpatialGrid grid = make_grid(-128.0, 128.0, 4096);
  return grid;
}

const WaveFunction& eps0_packet() {
  static const WaveFunction psi = build_initial({}, eps0_grid(), kParamsEps0);
  return psi;
}

double density_l1(const WaveFunction& a, const WaveFunction& b) {
  return (a.amplitudes.cwiseAbs2() - b.amplitudes.cwiseAbs2()).cwiseAbs().sum() * a.grid.dx();
}

std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// ---- core -----------------------------------------------------------------

double dft_unitarity() {
  const SpatialGrid grid = make_grid(-64.0, 64.0, 1024);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CVector<double> v(grid.size());
    for (auto& z : v) z = Complex(uniform(-1, 1), uniform(-1, 1));
    const WaveFunction psi(grid, v);
    const double n0 = norm(psi);
    const WaveFunction spectrum = dft(psi, Direction::forward);
    const WaveFunction back = dft(spectrum, Direction::inverse);
    worst = std::max({worst, std::abs(norm(spectrum) - n0) / n0, (back.amplitudes - v).norm() / v.norm()});
  }
  return worst;
}

double band_periodicity() {
  const BandDispersion band(4.0, {{1, Complex(0.5, 0.1)}, {2, Complex(-0.2, 0.3)}, {5, Complex(0.05)}});
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const double q = uniform(-10, 10);
    worst = std::max(worst, std::abs(band_eval(band, q + 2 * kPi / 4.0) - band_eval(band, q)));
  }
  return worst;
}

double antiderivative_consistency() {
  const BandDispersion band(4.0, {{1, Complex(0.5, 0.1)}, {2, Complex(-0.2, 0.3)}, {5, Complex(0.05)}});
  const double h = 1e-5;
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const double q = uniform(-3, 3);
    const double slope = (band_antiderivative(band, q + h) - band_antiderivative(band, q - h)) / (2 * h);
    worst = std::max(worst, std::abs(slope - band_eval(band, q)));
  }
  return worst;
}

// ---- specfun --------------------------------------------------------------

double bessel_sum_rule() {
  double worst = 0;
  for (double x : {0.5, 1.25, 2.5, 10.0}) {
    const Eigen::VectorXd j = bessel_j_sequence(80, x);
    worst = std::max(worst, std::abs(j[0] * j[0] + 2 * j.tail(80).squaredNorm() - 1));
  }
  return worst;
}

double bessel_recurrence() {
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = int(uniform(1, 60));
    const double x = uniform(0.1, 50);
    worst = std::max(worst, std::abs(bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2 * n / x * bessel_j(n, x)));
  }
  return worst;
}

double bessel_integral_representation() {
  // J_n(x) = (1/2pi) int_0^{2pi} cos(n theta - x sin theta) dtheta; trapezoid is spectral here
  constexpr int nodes = 256;
  double worst = 0;
  for (int n = -20; n <= 20; ++n) {
    for (double x : {-10.0, -3.7, -1.25, 0.4, 1.25, 2.5, 6.1, 10.0}) {
      double sum = 0;
      for (int k = 0; k < nodes; ++k) {
        const double theta = 2 * kPi * k / nodes;
        sum += std::cos(n * theta - x * std::sin(theta));
      }
      worst = std::max(worst, std::abs(sum / nodes - bessel_j(n, x)));
    }
  }
  return worst;
}

double airy_ode_residual() {
  const double h = 1e-4;
  double worst = 0;
  for (double x = -10; x <= 5; x += 0.173) {
    const double second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    worst = std::max(worst, std::abs(second - x * airy_ai(x)));
  }
  return worst;
}

double airy_branch_overlap() {
  double worst = 0;
  for (double x = -9.5; x <= -7.5; x += 0.01)
    worst = std::max(worst, std::abs(detail::airy_ai_maclaurin(x) - detail::airy_ai_asymptotic_negative(x)));
  for (double x = 7.0; x <= 8.5; x += 0.01) {
    const double reference = detail::airy_ai_asymptotic_positive(x);
    worst = std::max(worst, std::abs(detail::airy_ai_maclaurin(x) - reference) / reference);
  }
  return worst;
}

// ---- eigen ----------------------------------------------------------------

double rho_bessel_closed_form() {
  const RhoTable& t = rho_table();
  double worst = 0;
  for (int n = -40; n <= 40; ++n) worst = std::max(worst, std::abs(t(n) - t.s0 * bessel_j(n, -1.25)));
  return worst;
}

double rho_parseval() {
  const RhoTable& t = rho_table();
  return std::abs(t.values.squaredNorm() - t.s0 * t.s0) / (t.s0 * t.s0);
}

double omega_orthonormality() {
  const RhoTable& t = rho_table();
  double worst = 0;
  for (int l = -2 * t.n_max; l <= 2 * t.n_max; ++l)
    worst = std::max(worst, std::abs(omega(t, l) - (l == 0 ? t.s0 * t.s0 : 0.0)));
  return worst;
}

double rho_node_doubling() {
  const RhoTable& t = rho_table();
  const Eigen::VectorXcd a = detail::trapezoid_coefficients(kParams, cosine_band(), t.nodes);
  const Eigen::VectorXcd b = detail::trapezoid_coefficients(kParams, cosine_band(), 2 * t.nodes);
  double worst = 0;
  for (int n = -t.n_max; n <= t.n_max; ++n) {
    const Complex ca = a[n >= 0 ? n : n + a.size()], cb = b[n >= 0 ? n : n + b.size()];
    worst = std::max(worst, t.s0 * std::abs(ca - cb));
  }
  return worst;
}

double sigma_rho_proportionality() {
  const CoefficientTable direct = compute_sigma(kParams, cosine_band());
  const CoefficientTable derived = sigma_from_rho(rho_table());
  double worst = 0;
  for (int n = -direct.n_max; n <= direct.n_max; ++n) worst = std::max(worst, std::abs(direct(n) - derived(n)));
  return worst + std::abs(direct.values.squaredNorm() * kParams.force() - 1);
}

double eigenfunction_residual() {
  // H phi = -eps phi'' + (kappa/2)(phi(x+d) + phi(x-d)) + F x phi, compared with E phi
  const RhoTable& t = rho_table();
  const EigenfunctionSpec spec(t, 0.3);
  auto phi = [&](double x) { return eigenfunction_eval(spec, x); };
  const double h = 1.0 / 32;
  double worst = 0, scale = 0;
  for (double x = -30; x <= 20; x += 0.37) {
    const Complex second = (2.0 * (phi(x + 3 * h) + phi(x - 3 * h)) - 27.0 * (phi(x + 2 * h) + phi(x - 2 * h)) +
                            270.0 * (phi(x + h) + phi(x - h)) - 490.0 * phi(x)) /
                           (180 * h * h);
    const Complex h_phi = -kParams.epsilon() * second + 0.5 * (phi(x + 4) + phi(x - 4)) + kParams.force() * x * phi(x);
    worst = std::max(worst, std::abs(h_phi - spec.energy * phi(x)));
    scale = std::max(scale, std::abs(phi(x)));
  }
  return worst / scale;
}

double eigenfunction_shift_covariance() {
  const RhoTable& t = rho_table();
  const double e = 0.17;
  const EigenfunctionSpec a(t, e), b(t, e + kParams.bloch_frequency());
  double worst = 0;
  for (double x = -25; x <= 10; x += 0.71)
    worst = std::max(worst, std::abs(eigenfunction_eval(b, x + 4) - eigenfunction_eval(a, x)));
  return worst;
}

// ---- propagator -----------------------------------------------------------

double lambda_unitarity() {
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const WeightSequence w = lambda_weights(rho_table(), uniform(0, 2 * kTB));
    for (int m = -w.l_max; m <= w.l_max; ++m) {
      Complex sum{};
      for (int l = -w.l_max; l <= w.l_max; ++l) sum += w(l) * std::conj(w(l - m));
      worst = std::max(worst, std::abs(sum - (m == 0 ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double bloch_time_collapse() {
  double worst = 0;
  for (int m = 1; m <= 5; ++m) {
    const WeightSequence w = lambda_weights(rho_table(), m * kTB);
    for (int l = -w.l_max; l <= w.l_max; ++l) worst = std::max(worst, std::abs(w(l) - (l == 0 ? 1.0 : 0.0)));
  }
  return worst;
}

double graf_closed_form() {
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const double t = uniform(0, 2 * kTB);
    const WeightSequence a = g_weights(rho_table(), t, WeightMethod::series);
    const WeightSequence b = g_weights(rho_table(), t, WeightMethod::closed_form);
    const WeightSequence la = lambda_weights(rho_table(), t, WeightMethod::series);
    const WeightSequence lb = lambda_weights(rho_table(), t, WeightMethod::closed_form);
    worst = std::max({worst, (a.values - b.values).cwiseAbs().maxCoeff(), (la.values - lb.values).cwiseAbs().maxCoeff()});
  }
  return worst;
}

double g_magnitude_periodicity() {
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const double t = uniform(0, kTB);
    const WeightSequence a = g_weights(rho_table(), t), b = g_weights(rho_table(), t + kTB);
    worst = std::max(worst, (a.values.cwiseAbs() - b.values.cwiseAbs()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double phi_integral_check() {
  const std::pair<double, double> points[] = {{1, 1},   {0, 1},       {-1, 1},    {2, 2},  {0.5, 1.5},
                                              {-2, 1.5}, {1, 3}, {-0.5, 2.5}, {1.5, 2}, {2, 4}};
  double worst = 0;
  for (auto [x, t] : points) {
    const Complex closed = phi_integral(kParams, x, t, PhiMethod::closed).value;
    const Complex quad = phi_integral(kParams, x, t, PhiMethod::quadrature).value;
    worst = std::max(worst, std::abs(closed - quad));
  }
  return worst;
}

double kernel_stark_limit() {
  const RhoTable flat = compute_rho(kParams, flat_band());
  double worst = 0;
  for (auto [x, y, t] : {std::tuple{1.0, -2.0, 0.7}, std::tuple{-3.0, 4.0, 2.5}, std::tuple{0.2, 0.1, 5.0}}) {
    worst = std::max(worst, std::abs(kernel_general(flat, x, y, t) - kernel_stark(kParams, x, y, t)));
    worst = std::max(worst, std::abs(kernel_general(rho_table(), x, y, kTB) - kernel_stark(kParams, x, y, kTB)));
  }
  return worst;
}

// ---- evolve ---------------------------------------------------------------

double three_engine_agreement() {
  EvolutionSpec spec{kParams, cosine_band(), Engine::characteristics, kTB / 8000, {kTB / 4, kTB / 2, kTB, 2 * kTB}};
  const TimeSeries c = evolve_characteristics(spec, packet());
  const TimeSeries r = evolve_replica(spec, packet());
  const TimeSeries s = evolve_splitstep(spec, packet());
  double worst = 0;
  for (std::size_t k = 0; k < c.states.size(); ++k)
    worst = std::max({worst, l2_distance(c.states[k], r.states[k]), l2_distance(c.states[k], s.states[k]),
                      l2_distance(r.states[k], s.states[k])});
  return worst;
}

double norm_conservation() {
  std::vector<double> times;
  for (int k = 1; k <= 16; ++k) times.push_back(k * kTB / 4);
  EvolutionSpec spec{kParams, cosine_band(), Engine::characteristics, kTB / 2000, times};
  double worst = 0;
  for (const TimeSeries& series : {evolve_characteristics(spec, packet()), evolve_replica(spec, packet())})
    for (const auto& psi : series.states) worst = std::max(worst, std::abs(norm(psi) - 1));
  spec.record_times = {kTB};
  for (const auto& psi : evolve_splitstep(spec, packet()).states) worst = std::max(worst, std::abs(norm(psi) - 1));
  EvolutionSpec eps0{kParamsEps0, cosine_band(), Engine::eps0_map, 0, times};
  for (const auto& psi : evolve_eps0(eps0, eps0_packet()).states) worst = std::max(worst, std::abs(norm(psi) - 1));
  return worst;
}

double bloch_time_coincidence() {
  EvolutionSpec spec{kParams, cosine_band(), Engine::replica, 0, {kTB, 2 * kTB, 3 * kTB}};
  const TimeSeries full = evolve_replica(spec, packet());
  double worst = 0;
  for (int m = 1; m <= 3; ++m)
    worst = std::max(worst, l2_distance(full.states[m - 1], evolve_stark_exact(kParams, packet(), m * kTB)));
  return worst;
}

double pseudo_periodicity() {
  std::vector<double> times;
  for (int m = 1; m <= 5; ++m) times.push_back(m * kTB);
  EvolutionSpec spec{kParamsEps0, cosine_band(), Engine::eps0_map, 0, times};
  double worst = 0;
  for (const auto& psi : evolve_eps0(spec, eps0_packet()).states) worst = std::max(worst, density_l1(psi, eps0_packet()));
  return worst;
}

double eps0_vs_characteristics() {
  EvolutionSpec spec{kParamsEps0, cosine_band(), Engine::eps0_map, 0, {kTB / 3, kTB / 2, 1.7 * kTB}};
  const TimeSeries a = evolve_eps0(spec, eps0_packet());
  const TimeSeries b = evolve_characteristics(spec, eps0_packet());
  double worst = 0;
  for (std::size_t k = 0; k < a.states.size(); ++k) worst = std::max(worst, l2_distance(a.states[k], b.states[k]));
  return worst;
}

double time_reversal() {
  const double t = 1.3 * kTB;
  const WaveFunction forward = detail::characteristics_evolve(packet(), kParams, cosine_band(), t);
  // backward evolution from the time-t state: the engine is autonomous, so -t undoes t
  const WaveFunction back = detail::characteristics_evolve(forward, kParams, cosine_band(), -t);
  return l2_distance(back, packet());
}

double kernel_quadrature_vs_replica() {
  const SpatialGrid grid = make_grid(-64.0, 64.0, 2048);
  const WaveFunction psi0 = build_initial({}, grid, kParams);
  EvolutionSpec spec{kParams, cosine_band(), Engine::kernel_quadrature, 0, {kTB / 2}};
  const WaveFunction k = evolve_kernel_quadrature(spec, psi0, kTB / 2);
  const WaveFunction r = evolve_replica(spec, psi0).states.front();
  return std::max(l2_distance(k, r), std::abs(norm(k) - 1));
}

double splitstep_order() {
  EvolutionSpec spec{kParams, cosine_band(), Engine::splitstep, kTB / 250, {kTB}};
  const WaveFunction a = evolve_splitstep(spec, packet()).states.front();
  spec.dt /= 2;
  const WaveFunction b = evolve_splitstep(spec, packet()).states.front();
  spec.dt /= 2;
  const WaveFunction c = evolve_splitstep(spec, packet()).states.front();
  return std::abs(l2_distance(a, b) / l2_distance(b, c) - 4) / 4;
}

// ---- observables ----------------------------------------------------------

double parabolic_trajectory(int force_sign) {
  const WaveFunction psi = detail::characteristics_evolve(packet(), kParams, flat_band(), kTB, force_sign);
  const double reference = parabolic_reference(kParams, centroid(packet()), mean_momentum(packet()), kTB);
  return std::abs(centroid(psi) - reference);
}

double splitstep_parabola() {
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(0.5 * k);
  EvolutionSpec spec{kParams, flat_band(), Engine::splitstep, 1e-3, times};
  const TimeSeries s = evolve_splitstep(spec, packet());
  double worst = 0;
  for (std::size_t k = 0; k < s.states.size(); ++k)
    worst = std::max(worst, std::abs(centroid(s.states[k]) - parabolic_reference(kParams, 0, 0, s.times[k])));
  return worst;
}

double initial_width() { return std::abs(width(packet()) - 2.5); }

double stroboscopic_centroid() {
  EvolutionSpec spec{kParams, cosine_band(), Engine::replica, 0, {kTB, 2 * kTB, 3 * kTB}};
  const TimeSeries s = evolve_replica(spec, packet());
  double worst = 0;
  for (int m = 1; m <= 3; ++m)
    worst = std::max(worst, std::abs(centroid(s.states[m - 1]) - parabolic_reference(kParams, 0, 0, m * kTB)));
  return worst;
}

double stroboscopic_width() {
  EvolutionSpec spec{kParams, cosine_band(), Engine::replica, 0, {kTB, 2 * kTB, 3 * kTB}};
  const TimeSeries accelerated = evolve_replica(spec, packet());
  spec.band = flat_band();
  spec.engine = Engine::characteristics;
  const TimeSeries parabolic = evolve_characteristics(spec, packet());
  double worst = 0;
  for (int m = 0; m < 3; ++m)
    worst = std::max(worst, std::abs(width(accelerated.states[m]) - width(parabolic.states[m])));
  return worst;
}

double revival_bounds() {
  std::vector<double> times;
  for (int k = 0; k <= 64; ++k) times.push_back(k * kTB / 16);
  EvolutionSpec spec{kParams, cosine_band(), Engine::replica, 0, times};
  double worst = 0;
  for (const auto& psi : evolve_replica(spec, packet()).states) {
    const double p = revival_probability(packet(), psi);
    worst = std::max({worst, -p, p - 1});
  }
  return std::max(worst, 0.0);
}

double pseudo_bo_width() {
  EvolutionSpec spec{kParamsEps0, cosine_band(), Engine::eps0_map, 0, {kTB}};
  return std::abs(width(evolve_eps0(spec, eps0_packet(), kTB)) - width(eps0_packet()));
}

double density_period() {
  EvolutionSpec spec{kParamsEps0, cosine_band(), Engine::eps0_map, 0, {}};
  const Eigen::VectorXd rho0 = eps0_packet().amplitudes.cwiseAbs2();
  auto correlation = [&](double tau) {
    const Eigen::VectorXd rho = evolve_eps0(spec, eps0_packet(), tau).amplitudes.cwiseAbs2();
    return rho0.dot(rho) / (rho0.norm() * rho.norm());
  };
  // coarse scan of the autocorrelation, then golden-section refinement of the peak
  const int samples = 200;
  double best_tau = 0.5 * kTB, best = -1;
  for (int k = 0; k <= samples; ++k) {
    const double tau = kTB * (0.5 + double(k) / samples);
    const double c = correlation(tau);
    if (c > best) best = c, best_tau = tau;
  }
  double lo = best_tau - kTB / samples, hi = best_tau + kTB / samples;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 60; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (correlation(a) > correlation(b)) hi = b; else lo = a;
  }
  return std::abs(0.5 * (lo + hi) - kTB) / kTB;
}

// ---- initial states -------------------------------------------------------

struct Window {
  Eigen::Index first, count;
};

Window central(const SpatialGrid& grid, double fraction) {
  const auto count = Eigen::Index(fraction * grid.size());
  return {(grid.size() - count) / 2, count};
}

double airy_stark_eigenstate() {
  const SpatialGrid grid = make_grid(-512.0, 512.0, 8192);
  const WaveFunction psi0 = build_initial({InitialKind::airy_ideal}, grid, kParams);
  const WaveFunction psi = detail::characteristics_evolve(psi0, kParams, flat_band(), 1.0);
  const Window w = central(grid, 0.6);
  return (psi.amplitudes.segment(w.first, w.count).cwiseAbs() - psi0.amplitudes.segment(w.first, w.count).cwiseAbs())
      .cwiseAbs()
      .maxCoeff();
}

double airy_bloch_revival() {
  const SpatialGrid grid = make_grid(-512.0, 512.0, 8192);
  const WaveFunction psi0 = build_initial({InitialKind::airy_ideal}, grid, kParams);
  detail::check_momentum_box(psi0, kParams.force(), kTB);
  const WaveFunction psi = detail::characteristics_evolve(psi0, kParams, cosine_band(), kTB);
  const Window w = central(grid, 0.6);
  const auto ref = psi0.amplitudes.segment(w.first, w.count);
  return (psi.amplitudes.segment(w.first, w.count) - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
}

double apodization_ordering() {
  std::map<int, std::vector<double>> prev;
  for (auto [a, points, x_max] : {std::tuple{300, 131072, 512.0}, std::tuple{100, 65536, 256.0},
                                  std::tuple{50, 32768, 256.0}}) {
    const SpatialGrid grid = make_grid(x_max - points / 16.0, x_max, points);
    InitialStateSpec spec{InitialKind::airy_apodized};
    spec.apodization = a;
    const WaveFunction psi0 = build_initial(spec, grid, kParams);
    EvolutionSpec evo{kParams, cosine_band(), Engine::characteristics, 0, {kTB, 2 * kTB, 3 * kTB, 4 * kTB}};
    for (const auto& psi : evolve_characteristics(evo, psi0).states) prev[a].push_back(revival_probability(psi0, psi));
  }
  double violation = std::max({0.9 - prev[300][0], prev[100][0] - prev[300][0], prev[50][0] - prev[100][0]});
  for (int m = 0; m + 1 < 4; ++m) violation = std::max(violation, prev[50][m + 1] - prev[50][m]);
  return std::max(violation, 0.0);
}

struct CheckDef {
  const char* name;
  double tolerance;
  std::function<double(const ValidationOptions&)> run;
};

const std::vector<CheckDef>& definitions() {
  static const std::vector<CheckDef> defs = {
      {"dft_unitarity", 1e-12, [](auto&) { return dft_unitarity(); }},
      {"band_periodicity", 1e-12, [](auto&) { return band_periodicity(); }},
      {"antiderivative_consistency", 1e-6, [](auto&) { return antiderivative_consistency(); }},
      {"bessel_sum_rule", 1e-10, [](auto&) { return bessel_sum_rule(); }},
      {"bessel_recurrence", 1e-9, [](auto&) { return bessel_recurrence(); }},
      {"bessel_integral_representation", 1e-10, [](auto&) { return bessel_integral_representation(); }},
      {"airy_ode_residual", 1e-5, [](auto&) { return airy_ode_residual(); }},
      {"airy_branch_overlap", 1e-10, [](auto&) { return airy_branch_overlap(); }},
      {"rho_bessel_closed_form", 1e-8, [](auto&) { return rho_bessel_closed_form(); }},
      {"rho_parseval", 1e-8, [](auto&) { return rho_parseval(); }},
      {"omega_orthonormality", 1e-8, [](auto&) { return omega_orthonormality(); }},
      {"rho_node_doubling", 1e-11, [](auto&) { return rho_node_doubling(); }},
      {"sigma_rho_proportionality", 1e-10, [](auto&) { return sigma_rho_proportionality(); }},
      {"eigenfunction_residual", 1e-4, [](auto&) { return eigenfunction_residual(); }},
      {"eigenfunction_shift_covariance", 1e-10, [](auto&) { return eigenfunction_shift_covariance(); }},
      {"lambda_unitarity", 1e-8, [](auto&) { return lambda_unitarity(); }},
      {"bloch_time_collapse", 1e-10, [](auto&) { return bloch_time_collapse(); }},
      {"graf_closed_form", 1e-10, [](auto&) { return graf_closed_form(); }},
      {"g_magnitude_periodicity", 1e-10, [](auto&) { return g_magnitude_periodicity(); }},
      {"phi_integral", 1e-6, [](auto&) { return phi_integral_check(); }},
      {"kernel_stark_limit", 1e-10, [](auto&) { return kernel_stark_limit(); }},
      {"three_engine_agreement", 1e-6, [](auto&) { return three_engine_agreement(); }},
      {"norm_conservation", 1e-8, [](auto&) { return norm_conservation(); }},
      {"bloch_time_coincidence", 1e-6, [](auto&) { return bloch_time_coincidence(); }},
      {"pseudo_periodicity", 1e-6, [](auto&) { return pseudo_periodicity(); }},
      {"eps0_vs_characteristics", 1e-8, [](auto&) { return eps0_vs_characteristics(); }},
      {"time_reversal", 1e-9, [](auto&) { return time_reversal(); }},
      {"kernel_quadrature_vs_replica", 1e-5, [](auto&) { return kernel_quadrature_vs_replica(); }},
      {"splitstep_order", 0.2, [](auto&) { return splitstep_order(); }},
      {"parabolic_trajectory", 1e-3,
       [](const ValidationOptions& o) { return parabolic_trajectory(o.flip_force_sign ? -1 : 1); }},
      {"splitstep_parabola", 1e-4, [](auto&) { return splitstep_parabola(); }},
      {"initial_width", 1e-6, [](auto&) { return initial_width(); }},
      {"stroboscopic_centroid", 1e-3, [](auto&) { return stroboscopic_centroid(); }},
      {"stroboscopic_width", 1e-4, [](auto&) { return stroboscopic_width(); }},
      {"revival_bounds", 1e-9, [](auto&) { return revival_bounds(); }},
      {"pseudo_bo_width", 1e-6, [](auto&) { return pseudo_bo_width(); }},
      {"density_period", 1e-2, [](auto&) { return density_period(); }},
      {"airy_stark_eigenstate", 1e-5, [](auto&) { return airy_stark_eigenstate(); }},
      {"airy_bloch_revival", 1e-4, [](auto&) { return airy_bloch_revival(); }},
      {"apodization_ordering", 0.0, [](auto&) { return apodization_ordering(); }},
  };
  return defs;
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::pair<std::string, double>> validation_checks() {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& d : definitions()) out.emplace_back(d.name, d.tolerance);
  return out;
}

ValidationReport run_validation(const ValidationOptions& options,
                                const std::function<void(const CheckResult&)>& progress) {
  std::set<std::string> known;
  for (const auto& d : definitions()) known.insert(d.name);
  for (const auto& [name, value] : options.tolerances)
    if (!known.count(name)) throw std::invalid_argument("unknown check '" + name + "'");
  for (const auto& name : options.only)
    if (!known.count(name)) throw std::invalid_argument("unknown check '" + name + "'");

  ValidationReport report;
  for (const auto& d : definitions()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), d.name) == options.only.end())
      continue;
    CheckResult result;
    result.name = d.name;
    const auto override = options.tolerances.find(d.name);
    result.tolerance = override != options.tolerances.end() ? override->second : d.tolerance;
    const auto start = std::chrono::steady_clock::now();
    try {
      result.residual = d.run(options);
    } catch (const std::exception&) {
      result.residual = std::numeric_limits<double>::infinity();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.passed = result.residual <= result.tolerance;
    if (progress) progress(result);
    report.checks.push_back(result);
  }
  return report;
}

std::string format_check(const CheckResult& check) {
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %12.4e %12.4e %s", check.name.c_str(), check.residual, check.tolerance,
                check.passed ? "PASS" : "FAIL");
  return line;
}

}  // namespace wstark
