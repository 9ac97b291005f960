// Spectral data of H = eps p^2 + T(p) + F x: the coefficients rho_n and
// sigma_n of the improper eigenfunctions, the spectrum function S(q), the
// eigenfunctions themselves and the overlap sums Omega_l.
#pragma once

#include "wstark/core.hpp"

#include <Eigen/Dense>

namespace wstark {

/// Fourier coefficients c_n = (d/2pi) int_{-pi/d}^{pi/d} exp(i q d n + (i/F) A(q)) dq
/// on the window [-n_max, n_max], where A is the band antiderivative.
struct CoefficientTable {
  PhysicalParams params;
  BandDispersion band;
  int n_max = 0;
  Eigen::VectorXcd values;  ///< index n + n_max
  double tail_bound = 0;    ///< relative l2 mass dropped beyond n_max
  Eigen::Index nodes = 0;   ///< quadrature nodes used

  Complex operator()(int n) const {
    return (n < -n_max || n > n_max) ? Complex{} : values[n + n_max];
  }
};

/// rho_n = s0 c_n, with alpha = (F/eps)^{1/3} and s0 = S(0) = eps^{-1/3} F^{-1/6}.
struct RhoTable : CoefficientTable {
  double alpha = 0;
  double s0 = 0;
};

/// Trapezoidal evaluation of the unit-normalized coefficients c_n. Node
/// count doubles from 1024 until stable to 1e-11; the window grows until
/// three consecutive orders on both sides fall below tol * max|c_n|.
/// Throws ConvergenceError if that needs |n| > 4096.
CoefficientTable band_coefficients(const PhysicalParams& params, const BandDispersion& band,
                                   double tol = 1e-14);

/// Requires eps > 0, tol in (0, 1e-4].
RhoTable compute_rho(const PhysicalParams& params, const BandDispersion& band, double tol = 1e-14);

/// sigma_n = F^{-1/2} c_n; valid for eps = 0.
CoefficientTable compute_sigma(const PhysicalParams& params, const BandDispersion& band,
                               double tol = 1e-14);

/// sigma_n = eps^{1/3} F^{-1/3} rho_n.
CoefficientTable sigma_from_rho(const RhoTable& rho);

/// S(q) = S(0) exp((i/F) A(q)).
Complex spectrum_S(const RhoTable& table, double q);

struct EigenfunctionSpec {
  double energy;
  double beta;  ///< E / F
  const RhoTable* table;

  EigenfunctionSpec(const RhoTable& rho, double e)
      : energy(e), beta(e / rho.params.force()), table(&rho) {}
};

/// phi_E(x) = sum_n rho_n Ai(alpha (x - n d - E/F)). Terms whose Airy
/// argument exceeds 15 are dropped.
Complex eigenfunction_eval(const EigenfunctionSpec& spec, double x);

/// Omega_l = sum_n conj(rho_n) rho_{n+l}.
Complex omega(const RhoTable& table, int l);

namespace detail {

/// Unit-normalized c_n from an m-node trapezoid, for n in [-m/2, m/2) in
/// wrap-around order (no convergence control).
Eigen::VectorXcd trapezoid_coefficients(const PhysicalParams& params, const BandDispersion& band,
                                        Eigen::Index m);

}  // namespace detail

}  // namespace wstark
