#include "wstark/eigenfunctions.hpp"

#include "wstark/specfun.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wstark {

namespace {

constexpr int kMaxOrder = 4096;
constexpr Eigen::Index kFirstNodes = 1024;
constexpr Eigen::Index kMaxNodes = Eigen::Index(1) << 18;
constexpr double kNodeStability = 1e-12;
constexpr double kNoiseFloor = 1e-16;

// c_n for all n in [-m/2, m/2), wrap-around order. With q_j = -pi/d + j 2pi/(d m)
// the trapezoid sum is (-1)^n times an inverse DFT of f_j = exp((i/F) A(q_j)).
Eigen::VectorXcd trapezoid_coefficients(const PhysicalParams& params, const BandDispersion& band,
                                        Eigen::Index m, Eigen::FFT<double>& fft) {
  const double d = params.lattice_period();
  const double f_inv = 1.0 / params.force();
  const double pi = std::numbers::pi;
  Eigen::VectorXcd samples(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double q = -pi / d + 2 * pi * double(j) / (d * double(m));
    samples[j] = std::polar(1.0, band_antiderivative(band, q) * f_inv);
  }
  Eigen::VectorXcd c(m);
  fft.inv(c, samples);
  for (Eigen::Index k = 1; k < m; k += 2) c[k] = -c[k];  // wrap-around index parity = n parity
  return c;
}

Complex at_order(const Eigen::VectorXcd& wrapped, Eigen::Index n) {
  const Eigen::Index m = wrapped.size();
  return wrapped[n >= 0 ? n : n + m];
}

}  // namespace

Eigen::VectorXcd detail::trapezoid_coefficients(const PhysicalParams& params, const BandDispersion& band,
                                                Eigen::Index m) {
  Eigen::FFT<double> fft;
  return wstark::trapezoid_coefficients(params, band, m, fft);
}

CoefficientTable band_coefficients(const PhysicalParams& params, const BandDispersion& band,
                                   double tol) {
  if (!(tol > 0)) throw std::invalid_argument("band_coefficients: tol must be > 0");
  if (band.lattice_period() != params.lattice_period())
    throw std::invalid_argument("band_coefficients: band and parameters disagree on d");

  Eigen::FFT<double> fft;
  Eigen::Index m = kFirstNodes;
  Eigen::VectorXcd coarse = trapezoid_coefficients(params, band, m, fft);
  while (true) {
    if (2 * m > kMaxNodes)
      throw ConvergenceError("band_coefficients: quadrature did not converge with " +
                             std::to_string(kMaxNodes) + " nodes");
    Eigen::VectorXcd fine = trapezoid_coefficients(params, band, 2 * m, fft);
    const Eigen::Index reliable = m / 2;  // |n| well below either Nyquist index

    double peak = 0, change = 0;
    for (Eigen::Index n = -reliable; n <= reliable; ++n) {
      peak = std::max(peak, std::abs(at_order(fine, n)));
      change = std::max(change, std::abs(at_order(fine, n) - at_order(coarse, n)));
    }
    const double threshold = std::max(tol, kNoiseFloor) * peak;
    Eigen::Index last = 0;
    for (Eigen::Index n = -reliable; n <= reliable; ++n)
      if (std::abs(at_order(fine, n)) >= threshold) last = std::max(last, std::abs(n));

    const bool stable = change <= kNodeStability * peak;
    const bool tail_seen = last + 3 <= reliable;
    if (stable && tail_seen) {
      if (last > kMaxOrder)
        throw ConvergenceError("band_coefficients: tail not below tolerance within |n| <= " +
                               std::to_string(kMaxOrder));
      CoefficientTable table{params, band, int(last), Eigen::VectorXcd(2 * last + 1), 0, 2 * m};
      for (Eigen::Index n = -last; n <= last; ++n) table.values[n + last] = at_order(fine, n);
      double tail = 0;
      for (Eigen::Index n = last + 1; n <= reliable; ++n)
        tail += std::norm(at_order(fine, n)) + std::norm(at_order(fine, -n));
      table.tail_bound = std::sqrt(tail) / peak;
      return table;
    }
    if (last > kMaxOrder)
      throw ConvergenceError("band_coefficients: tail not below tolerance within |n| <= " +
                             std::to_string(kMaxOrder));
    coarse = std::move(fine);
    m *= 2;
  }
}

RhoTable compute_rho(const PhysicalParams& params, const BandDispersion& band, double tol) {
  if (!(params.epsilon() > 0)) throw std::invalid_argument("compute_rho: requires epsilon > 0");
  if (!(tol > 0 && tol <= 1e-4)) throw std::invalid_argument("compute_rho: tol must be in (0, 1e-4]");
  RhoTable table{band_coefficients(params, band, tol)};
  const double eps = params.epsilon();
  const double force = params.force();
  table.alpha = std::cbrt(force / eps);
  table.s0 = 1.0 / (std::cbrt(eps) * std::pow(force, 1.0 / 6.0));
  table.values *= table.s0;
  return table;
}

CoefficientTable compute_sigma(const PhysicalParams& params, const BandDispersion& band, double tol) {
  if (!(tol > 0 && tol <= 1e-4)) throw std::invalid_argument("compute_sigma: tol must be in (0, 1e-4]");
  CoefficientTable table = band_coefficients(params, band, tol);
  table.values /= std::sqrt(params.force());
  return table;
}

CoefficientTable sigma_from_rho(const RhoTable& rho) {
  CoefficientTable table = rho;
  table.values *= std::cbrt(rho.params.epsilon()) / std::cbrt(rho.params.force());
  return table;
}

Complex spectrum_S(const RhoTable& table, double q) {
  const double period = 2 * std::numbers::pi / table.params.lattice_period();
  const double reduced = q - period * std::round(q / period);
  return std::polar(table.s0, band_antiderivative(table.band, reduced) / table.params.force());
}

Complex eigenfunction_eval(const EigenfunctionSpec& spec, double x) {
  const RhoTable& t = *spec.table;
  const double d = t.params.lattice_period();
  Complex sum{};
  for (int n = -t.n_max; n <= t.n_max; ++n) {
    const double arg = t.alpha * (x - n * d - spec.beta);
    if (arg > 15) continue;
    sum += t(n) * airy_ai(arg);
  }
  return sum;
}

Complex omega(const RhoTable& table, int l) {
  Complex sum{};
  const int lo = std::max(-table.n_max, -table.n_max - l);
  const int hi = std::min(table.n_max, table.n_max - l);
  for (int n = lo; n <= hi; ++n) sum += std::conj(table(n)) * table(n + l);
  return sum;
}

}  // namespace wstark
