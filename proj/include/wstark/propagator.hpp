// Analytic time-evolution data: the weight sequences G_l(t) and Lambda_l(t),
// the general and Stark kernels, the eps = 0 shift map and the Phi integral
// that links the eigenfunction expansion to the kernel.
#pragma once

#include "wstark/core.hpp"
#include "wstark/eigenfunctions.hpp"

#include <Eigen/Dense>

namespace wstark {

enum class WeightKind { G, Lambda };
enum class WeightMethod { series, closed_form };

struct WeightSequence {
  double time = 0;
  int l_max = 0;
  Eigen::VectorXcd values;  ///< index l + l_max
  WeightKind kind = WeightKind::G;
  WeightMethod method = WeightMethod::series;

  Complex operator()(int l) const {
    return (l < -l_max || l > l_max) ? Complex{} : values[l + l_max];
  }
  /// Largest |l| whose weight is at least rel times the largest weight.
  int effective_l_max(double rel = 1e-14) const;
};

/// G_l(t) = sum_n rho_n conj(rho_{n-l}) exp(i F t d n), |l| <= 2 n_max.
/// The closed form (sinusoidal band only) is
/// G_l = s0^2 J_{-l}(z) exp(i l (pi + F d t)/2), z = (2 kappa/(F d)) sin(F d t/2).
WeightSequence g_weights(const RhoTable& table, double t, WeightMethod method = WeightMethod::series);

/// Lambda_l(t) = F^{1/3} eps^{2/3} sum_n conj(rho_n) rho_{n+l} exp(i F d t n).
/// Also formed as F^{1/3} eps^{2/3} G_l(t) exp(-i F d l t); throws if the two disagree.
WeightSequence lambda_weights(const RhoTable& table, double t,
                              WeightMethod method = WeightMethod::series);

/// U(x, y, t) assembled from G_l. Throws for t = 0.
Complex kernel_general(const RhoTable& table, double x, double y, double t);

/// Same with precomputed weights (must be kind G at time t).
Complex kernel_general(const RhoTable& table, const WeightSequence& g, double x, double y);

/// Propagator of eps p^2 + F x.
Complex kernel_stark(const PhysicalParams& params, double x, double y, double t);

/// psi(x, t) = exp(-i phase_rate x) sum_l weights_l psi(x - l d, 0), for eps = 0.
struct ShiftMap {
  double time = 0;
  double lattice_period = 0;
  double phase_rate = 0;  ///< F t
  int l_max = 0;
  Eigen::VectorXcd weights;  ///< index l + l_max

  Complex operator()(int l) const {
    return (l < -l_max || l > l_max) ? Complex{} : weights[l + l_max];
  }
};

/// w_l(t) = F sum_n sigma_n conj(sigma_{n-l}) exp(i F t d n).
ShiftMap eps0_shift_map(const CoefficientTable& sigma, double t);

enum class PhiMethod { closed, quadrature };

struct PhiValue {
  Complex value;
  double residual = 0;  ///< Richardson residual (quadrature only)
};

/// Phi(x, t) = int Ai(xi) Ai(xi + alpha x) exp(i F t xi / alpha) dxi.
/// Closed: sqrt(1/(4 pi i eps t alpha^2)) exp(i (x - eps F t^2)^2/(4 eps t) - i eps F^2 t^3/3).
/// Quadrature: trapezoid with Gaussian damping exp(-eta xi^2), extrapolated to
/// eta -> 0 over eta = 4e-4 / 2^j, j = 0..3. Throws ConvergenceError when the
/// extrapolation residual exceeds `max_residual`.
PhiValue phi_integral(const PhysicalParams& params, double x, double t, PhiMethod method,
                      double max_residual = 1e-4);

}  // namespace wstark
