// Time evolution engines. Splitstep integrates the Schroedinger equation
// numerically; characteristics solves it exactly in momentum space; replica
// builds the full solution from the Stark one and the Lambda_l weights;
// kernel_quadrature applies the analytic kernel directly (small grids only);
// eps0_map applies the eps = 0 shift map.
#pragma once

#include "wstark/core.hpp"
#include "wstark/eigenfunctions.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wstark {

enum class Engine { splitstep, characteristics, replica, kernel_quadrature, eps0_map };

std::string_view to_string(Engine engine);
/// Parses "splitstep", "characteristics", "replica", "kernel_quadrature", "eps0_map".
Engine parse_engine(std::string_view name);

struct EvolutionSpec {
  PhysicalParams params;
  BandDispersion band;
  Engine engine = Engine::characteristics;
  /// Splitstep step bound; each interval between records is cut into equal
  /// steps no longer than dt. Zero selects T_B/2000 with automatic halving
  /// until the step-halving error ratio certifies second order.
  double dt = 0;
  std::vector<double> record_times;
  double coefficient_tol = 1e-14;
  /// When set, each recorded state is handed to the observer instead of
  /// being stored in TimeSeries::states.
  std::function<void(double, const WaveFunction&)> observer;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<WaveFunction> states;
  double max_leak = 0;  ///< largest boundary_leak seen (normalizable states only)
  double dt_used = 0;   ///< splitstep only
  double dt_error = 0;  ///< splitstep auto-dt: L2 change between the two finest runs
  std::vector<std::string> warnings;
};

/// Leak levels: a warning is recorded above the first, splitstep aborts above the second.
inline constexpr double kLeakWarning = 1e-8;
inline constexpr double kLeakAbort = 1e-6;

/// Dispatches on spec.engine. Checks engine/epsilon compatibility.
TimeSeries evolve(const EvolutionSpec& spec, const WaveFunction& psi0);

TimeSeries evolve_splitstep(const EvolutionSpec& spec, const WaveFunction& psi0);
TimeSeries evolve_characteristics(const EvolutionSpec& spec, const WaveFunction& psi0);
TimeSeries evolve_replica(const EvolutionSpec& spec, const WaveFunction& psi0);
TimeSeries evolve_kernel_quadrature(const EvolutionSpec& spec, const WaveFunction& psi0);
TimeSeries evolve_eps0(const EvolutionSpec& spec, const WaveFunction& psi0);

/// Single-time conveniences.
WaveFunction evolve_stark_exact(const PhysicalParams& params, const WaveFunction& psi0, double t);
WaveFunction evolve_kernel_quadrature(const EvolutionSpec& spec, const WaveFunction& psi0, double t);
WaveFunction evolve_eps0(const EvolutionSpec& spec, const WaveFunction& psi0, double t);

/// Grid steps per lattice period; throws if d is not an integer multiple of dx.
Eigen::Index lattice_steps(const SpatialGrid& grid, double lattice_period);

/// L2 distance ||a - b|| on the common grid.
double l2_distance(const WaveFunction& a, const WaveFunction& b);

namespace detail {

/// Exact momentum-space solution at time t. `force_sign` = -1 evolves under
/// -F instead (used for fault injection in the validation suite).
WaveFunction characteristics_evolve(const WaveFunction& psi0, const PhysicalParams& params,
                                    const BandDispersion& band, double t, int force_sign = 1);

/// Throws if momentum mass beyond |q| > pi/dx - F t_max exceeds 1e-12 of the total.
void check_momentum_box(const WaveFunction& psi0, double force, double t_max);

/// out(x) = sum_l w_l in(x - l d) with d = steps * dx, periodic wrap.
CVector<double> replicate(const CVector<double>& in, const Eigen::VectorXcd& weights, int l_max,
                          Eigen::Index steps, double rel_cutoff = 1e-14);

}  // namespace detail

}  // namespace wstark
