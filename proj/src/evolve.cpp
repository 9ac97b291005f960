#include "wstark/evolve.hpp"

#include "wstark/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

namespace wstark {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kLeakCheckInterval = 200;
constexpr int kMaxHalvings = 4;
constexpr Eigen::Index kMaxKernelGrid = 2048;
constexpr double kMinKernelTime = 0.1;

std::string format_number(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

void require_sorted(const std::vector<double>& times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k])) throw std::invalid_argument("record times must be finite");
    if (k > 0 && times[k] < times[k - 1])
      throw std::invalid_argument("record times must be sorted");
  }
}

double max_abs_time(const std::vector<double>& times) {
  double out = 0;
  for (double t : times) out = std::max(out, std::abs(t));
  return out;
}

void track_leak(TimeSeries& series, const WaveFunction& psi, double t);

void emit(const EvolutionSpec& spec, TimeSeries& series, double t, WaveFunction psi) {
  track_leak(series, psi, t);
  series.times.push_back(t);
  if (spec.observer)
    spec.observer(t, psi);
  else
    series.states.push_back(std::move(psi));
}

void track_leak(TimeSeries& series, const WaveFunction& psi, double t) {
  if (!psi.normalizable) return;
  const double leak = boundary_leak(psi);
  if (leak > kLeakWarning && leak > series.max_leak)
    series.warnings.push_back("boundary leak " + format_number(leak) + " at t = " + format_number(t));
  series.max_leak = std::max(series.max_leak, leak);
}

class SplitStepper {
 public:
  SplitStepper(const SpatialGrid& grid, const PhysicalParams& params, const BandDispersion& band)
      : transform_(grid), positions_(grid.positions()), force_(params.force()) {
    const Eigen::VectorXd q = grid.momenta();
    energy_ = params.epsilon() * q.array().square().matrix() + band_eval(band, q);
  }

  // Strang step h: half potential kick, full kinetic drift, half kick. Adjacent
  // half kicks inside one interval are merged.
  // `on_step` sees the amplitudes every few steps; kicks are pure phases, so
  // moduli there are already those of the state at the step boundary.
  void advance(CVector<double>& psi, double h, Eigen::Index steps,
               const std::function<void(const CVector<double>&, Eigen::Index)>& on_step) {
    if (steps == 0) return;
    if (h != step_) {
      step_ = h;
      half_kick_ = (-kI * force_ * (h / 2) * positions_.cast<Complex>().array()).exp().matrix();
      full_kick_ = half_kick_.cwiseProduct(half_kick_);
      drift_ = (-kI * h * energy_.cast<Complex>().array()).exp().matrix();
    }
    psi = psi.cwiseProduct(half_kick_);
    for (Eigen::Index s = 0; s < steps; ++s) {
      transform_.raw_forward(psi, scratch_);
      scratch_ = scratch_.cwiseProduct(drift_);
      transform_.raw_inverse(scratch_, psi);
      if (s + 1 < steps) {
        psi = psi.cwiseProduct(full_kick_);
        if (on_step && (s + 1) % kLeakCheckInterval == 0) on_step(psi, s + 1);
      }
    }
    psi = psi.cwiseProduct(half_kick_);
  }

 private:
  GridTransform<double> transform_;
  Eigen::VectorXd positions_;
  Eigen::VectorXd energy_;
  double force_;
  double step_ = 0;
  CVector<double> half_kick_, full_kick_, drift_, scratch_;
};

TimeSeries run_splitstep(const EvolutionSpec& spec, const WaveFunction& psi0, double dt_max) {
  if (psi0.representation != Representation::position)
    throw std::invalid_argument("evolve_splitstep: psi0 must be in position representation");
  TimeSeries series;
  series.dt_used = dt_max;
  SplitStepper stepper(psi0.grid, spec.params, spec.band);
  WaveFunction psi = psi0;
  double now = 0;
  for (double target : spec.record_times) {
    const double interval = target - now;
    const auto steps = static_cast<Eigen::Index>(std::ceil(std::abs(interval) / dt_max - 1e-9));
    const double h = steps > 0 ? interval / double(steps) : 0.0;
    auto monitor = [&](const CVector<double>& amplitudes, Eigen::Index s) {
      if (!psi.normalizable) return;
      const double leak = boundary_leak(WaveFunction(psi.grid, amplitudes));
      series.max_leak = std::max(series.max_leak, leak);
      if (leak > kLeakAbort)
        throw Error("evolve_splitstep: boundary leak " + format_number(leak) + " exceeds " +
                    format_number(kLeakAbort) + " at t = " + format_number(now + h * double(s)) +
                    "; enlarge the grid");
    };
    stepper.advance(psi.amplitudes, h, steps, monitor);
    now = target;
    if (psi.normalizable && boundary_leak(psi) > kLeakAbort)
      throw Error("evolve_splitstep: boundary leak " + format_number(boundary_leak(psi)) + " exceeds " +
                  format_number(kLeakAbort) + " at t = " + format_number(now) + "; enlarge the grid");
    emit(spec, series, target, psi);
  }
  return series;
}

double series_distance(const TimeSeries& a, const TimeSeries& b) {
  double out = 0;
  for (std::size_t k = 0; k < a.states.size(); ++k)
    out = std::max(out, l2_distance(a.states[k], b.states[k]));
  return out;
}

void require_epsilon(const EvolutionSpec& spec, bool positive, const char* who) {
  const bool ok = positive ? spec.params.epsilon() > 0 : spec.params.epsilon() == 0;
  if (!ok)
    throw std::invalid_argument(std::string(who) +
                                (positive ? ": requires epsilon > 0" : ": requires epsilon = 0"));
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::splitstep: return "splitstep";
    case Engine::characteristics: return "characteristics";
    case Engine::replica: return "replica";
    case Engine::kernel_quadrature: return "kernel_quadrature";
    case Engine::eps0_map: return "eps0_map";
  }
  return "unknown";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::splitstep, Engine::characteristics, Engine::replica,
                   Engine::kernel_quadrature, Engine::eps0_map})
    if (to_string(e) == name) return e;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

Eigen::Index lattice_steps(const SpatialGrid& grid, double lattice_period) {
  const auto steps = grid.steps_in(lattice_period);
  if (!steps || *steps <= 0)
    throw std::invalid_argument("lattice period d = " + format_number(lattice_period) +
                                " is not an integer multiple of dx = " + format_number(grid.dx()) +
                                "; choose n_points or the box so that d/dx is an integer");
  return *steps;
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
  if (a.representation != b.representation)
    throw std::invalid_argument("l2_distance: representation mismatch");
  return std::sqrt((a.amplitudes - b.amplitudes).squaredNorm() * a.measure());
}

namespace detail {

void check_momentum_box(const WaveFunction& psi0, double force, double t_max) {
  const WaveFunction spectrum =
      psi0.representation == Representation::momentum ? psi0 : dft(psi0, Direction::forward);
  const double limit = psi0.grid.nyquist() - force * t_max;
  if (!(limit > 0))
    throw Error("momentum box too small: F t_max = " + format_number(force * t_max) +
                " exceeds pi/dx = " + format_number(psi0.grid.nyquist()) + "; reduce dx");
  double outside = 0;
  const double total = spectrum.amplitudes.squaredNorm();
  for (Eigen::Index k = 0; k < spectrum.grid.size(); ++k)
    if (std::abs(spectrum.grid.momentum(k)) > limit) outside += std::norm(spectrum.amplitudes[k]);
  if (outside > 1e-12 * total)
    throw Error("drifted momentum support exits the momentum box (fraction " +
                format_number(outside / total) + " beyond |q| > " + format_number(limit) +
                "); reduce dx or t_max");
}

WaveFunction characteristics_evolve(const WaveFunction& psi0, const PhysicalParams& params,
                                    const BandDispersion& band, double t, int force_sign) {
  if (psi0.representation != Representation::position)
    throw std::invalid_argument("characteristics_evolve: psi0 must be in position representation");
  const SpatialGrid& grid = psi0.grid;
  const double force = force_sign * params.force();
  const double eps = params.epsilon();
  const Eigen::Index n = grid.size();

  // psi~(q + F t, 0) is the transform of exp(-i F t x) psi0(x)
  CVector<double> shifted(n);
  for (Eigen::Index j = 0; j < n; ++j)
    shifted[j] = psi0.amplitudes[j] * std::polar(1.0, -force * t * grid.x(j));

  GridTransform<double> transform(grid);
  CVector<double> spectrum(n);
  transform.raw_forward(shifted, spectrum);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double q = grid.momentum(k);
    // int_0^t E(q + F u) du with E(q) = eps q^2 + T(q)
    double phase = eps * t * (q * q + q * force * t + force * force * t * t / 3);
    if (!band.empty())
      phase += (band_antiderivative(band, q + force * t) - band_antiderivative(band, q)) / force;
    spectrum[k] *= std::polar(1.0, -phase);
  }
  CVector<double> out(n);
  transform.raw_inverse(spectrum, out);
  return WaveFunction(grid, std::move(out), Representation::position, psi0.normalizable);
}

CVector<double> replicate(const CVector<double>& in, const Eigen::VectorXcd& weights, int l_max,
                          Eigen::Index steps, double rel_cutoff) {
  const Eigen::Index n = in.size();
  const double peak = weights.cwiseAbs().maxCoeff();
  CVector<double> out = CVector<double>::Zero(n);
  for (int l = -l_max; l <= l_max; ++l) {
    const Complex w = weights[l + l_max];
    if (std::abs(w) < rel_cutoff * peak) continue;
    // out[j] += w in[j - l steps]
    const Eigen::Index s = ((l * steps) % n + n) % n;
    out.tail(n - s) += w * in.head(n - s);
    if (s > 0) out.head(s) += w * in.tail(s);
  }
  return out;
}

}  // namespace detail

TimeSeries evolve_splitstep(const EvolutionSpec& spec, const WaveFunction& psi0) {
  require_sorted(spec.record_times);
  if (spec.dt < 0 || !std::isfinite(spec.dt)) throw std::invalid_argument("dt must be >= 0");
  if (spec.dt > 0) return run_splitstep(spec, psi0, spec.dt);

  // Step-halving certification needs whole runs side by side; the observer
  // only sees the accepted one.
  EvolutionSpec quiet = spec;
  quiet.observer = nullptr;
  double dt = spec.params.bloch_period() / 2000;
  TimeSeries coarse = run_splitstep(quiet, psi0, dt);
  TimeSeries middle = run_splitstep(quiet, psi0, dt / 2);
  TimeSeries fine = run_splitstep(quiet, psi0, dt / 4);
  for (int halving = 0;; ++halving) {
    const double e1 = series_distance(coarse, middle);
    const double e2 = series_distance(middle, fine);
    fine.dt_error = e2;
    const double ratio = e2 > 0 ? e1 / e2 : 4.0;
    const bool certified = e2 < 1e-12 || (ratio > 3.2 && ratio < 4.8);
    if (certified || halving == kMaxHalvings) {
      if (!certified)
        fine.warnings.push_back("dt not certified: step-halving error ratio " + format_number(ratio));
      if (spec.observer) {
        for (std::size_t k = 0; k < fine.states.size(); ++k) spec.observer(fine.times[k], fine.states[k]);
        fine.states.clear();
      }
      return fine;
    }
    dt /= 2;
    coarse = std::move(middle);
    middle = std::move(fine);
    fine = run_splitstep(quiet, psi0, dt / 4);
  }
}

TimeSeries evolve_characteristics(const EvolutionSpec& spec, const WaveFunction& psi0) {
  require_sorted(spec.record_times);
  detail::check_momentum_box(psi0, spec.params.force(), max_abs_time(spec.record_times));
  TimeSeries series;
  for (double t : spec.record_times) {
    emit(spec, series, t, detail::characteristics_evolve(psi0, spec.params, spec.band, t));
  }
  return series;
}

WaveFunction evolve_stark_exact(const PhysicalParams& params, const WaveFunction& psi0, double t) {
  detail::check_momentum_box(psi0, params.force(), std::abs(t));
  return detail::characteristics_evolve(psi0, params, BandDispersion(params.lattice_period()), t);
}

TimeSeries evolve_replica(const EvolutionSpec& spec, const WaveFunction& psi0) {
  require_epsilon(spec, true, "evolve_replica");
  require_sorted(spec.record_times);
  const Eigen::Index steps = lattice_steps(psi0.grid, spec.params.lattice_period());
  detail::check_momentum_box(psi0, spec.params.force(), max_abs_time(spec.record_times));
  const RhoTable table = compute_rho(spec.params, spec.band, spec.coefficient_tol);
  const BandDispersion flat(spec.params.lattice_period());
  TimeSeries series;
  for (double t : spec.record_times) {
    const WaveFunction stark = detail::characteristics_evolve(psi0, spec.params, flat, t);
    const WeightSequence lambda = lambda_weights(table, t);
    emit(spec, series, t,
         WaveFunction(psi0.grid, detail::replicate(stark.amplitudes, lambda.values, lambda.l_max, steps),
                      Representation::position, psi0.normalizable));
  }
  return series;
}

WaveFunction evolve_kernel_quadrature(const EvolutionSpec& spec, const WaveFunction& psi0, double t) {
  require_epsilon(spec, true, "evolve_kernel_quadrature");
  const SpatialGrid& grid = psi0.grid;
  const Eigen::Index n = grid.size();
  if (n > kMaxKernelGrid)
    throw std::invalid_argument("evolve_kernel_quadrature: grid has " + std::to_string(n) +
                                " points; at most 2048 are supported");
  if (t == 0) return psi0;
  if (std::abs(t) < kMinKernelTime)
    throw std::invalid_argument("evolve_kernel_quadrature: |t| = " + format_number(std::abs(t)) +
                                " is below 0.1; kernel under-resolved");
  const double eps = spec.params.epsilon();
  const double resolution = grid.extent() * grid.dx();
  if (resolution >= 2 * std::numbers::pi * eps * std::abs(t))
    throw std::invalid_argument("evolve_kernel_quadrature: L dx = " + format_number(resolution) +
                                " must stay below 2 pi eps |t| = " +
                                format_number(2 * std::numbers::pi * eps * std::abs(t)) +
                                "; refine the grid or increase t");

  const RhoTable table = compute_rho(spec.params, spec.band, spec.coefficient_tol);
  const WeightSequence g = g_weights(table, t);
  const int reach = g.effective_l_max();
  const double force = spec.params.force();
  const double d = spec.params.lattice_period();
  const double drift = eps * force * t * t;

  // U(x_i, y_j) = prefactor(x_i) h(y_j - x_i): tabulate h on the lag grid
  Eigen::VectorXcd lag(2 * n - 1);
  for (Eigen::Index k = -(n - 1); k <= n - 1; ++k) {
    const double delta = double(k) * grid.dx();
    Complex sum{};
    for (int l = -reach; l <= reach; ++l) {
      const double shift = delta + d * l - drift;
      sum += g(l) * std::polar(1.0, shift * shift / (4 * eps * t));
    }
    lag[k + n - 1] = sum;
  }
  const Complex common = std::sqrt(1.0 / (4.0 * std::numbers::pi * kI * eps * t)) /
                         (table.s0 * table.s0) * grid.dx() *
                         std::polar(1.0, -eps * force * force * t * t * t / 3);
  CVector<double> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // sum_j lag[j - i] psi0[j]
    const Complex sum = lag.segment(n - 1 - i, n).transpose() * psi0.amplitudes;
    out[i] = common * std::polar(1.0, -force * grid.x(i) * t) * sum;
  }
  return WaveFunction(grid, std::move(out), Representation::position, psi0.normalizable);
}

TimeSeries evolve_kernel_quadrature(const EvolutionSpec& spec, const WaveFunction& psi0) {
  require_sorted(spec.record_times);
  TimeSeries series;
  for (double t : spec.record_times) {
    emit(spec, series, t, evolve_kernel_quadrature(spec, psi0, t));
  }
  return series;
}

namespace {

WaveFunction apply_shift_map(const WaveFunction& psi0, const ShiftMap& map, Eigen::Index steps) {
  CVector<double> out = detail::replicate(psi0.amplitudes, map.weights, map.l_max, steps);
  for (Eigen::Index j = 0; j < out.size(); ++j) out[j] *= std::polar(1.0, -map.phase_rate * psi0.grid.x(j));
  return WaveFunction(psi0.grid, std::move(out), Representation::position, psi0.normalizable);
}

}  // namespace

WaveFunction evolve_eps0(const EvolutionSpec& spec, const WaveFunction& psi0, double t) {
  require_epsilon(spec, false, "evolve_eps0");
  const Eigen::Index steps = lattice_steps(psi0.grid, spec.params.lattice_period());
  const CoefficientTable sigma = compute_sigma(spec.params, spec.band, spec.coefficient_tol);
  return apply_shift_map(psi0, eps0_shift_map(sigma, t), steps);
}

TimeSeries evolve_eps0(const EvolutionSpec& spec, const WaveFunction& psi0) {
  require_epsilon(spec, false, "evolve_eps0");
  require_sorted(spec.record_times);
  const Eigen::Index steps = lattice_steps(psi0.grid, spec.params.lattice_period());
  const CoefficientTable sigma = compute_sigma(spec.params, spec.band, spec.coefficient_tol);
  TimeSeries series;
  for (double t : spec.record_times) emit(spec, series, t, apply_shift_map(psi0, eps0_shift_map(sigma, t), steps));
  return series;
}

TimeSeries evolve(const EvolutionSpec& spec, const WaveFunction& psi0) {
  switch (spec.engine) {
    case Engine::splitstep: return evolve_splitstep(spec, psi0);
    case Engine::characteristics: return evolve_characteristics(spec, psi0);
    case Engine::replica: return evolve_replica(spec, psi0);
    case Engine::kernel_quadrature: return evolve_kernel_quadrature(spec, psi0);
    case Engine::eps0_map: return evolve_eps0(spec, psi0);
  }
  throw std::invalid_argument("evolve: unknown engine");
}

}  // namespace wstark
