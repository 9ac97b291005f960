// Shared building blocks: physical parameters, band dispersion, uniform
// periodic grids, the unitary DFT convention and the wave-function container.
//
// Everything here is templated on the real scalar; the rest of the library
// uses the `double` aliases declared at the bottom.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace wstark {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series, quadrature or tail estimate failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// Physical parameters
// ---------------------------------------------------------------------------

/// Coefficients of H = eps p^2 + T(p) + F x (hbar = 1, dimensionless).
template <typename Real = double>
class BasicPhysicalParams {
 public:
  BasicPhysicalParams(Real epsilon, Real force, Real lattice_period)
      : epsilon_(epsilon), force_(force), lattice_period_(lattice_period) {
    if (!(std::isfinite(epsilon) && epsilon >= 0))
      throw std::invalid_argument("epsilon must be finite and >= 0");
    if (!(std::isfinite(force) && force > 0))
      throw std::invalid_argument("force must be finite and > 0");
    if (!(std::isfinite(lattice_period) && lattice_period > 0))
      throw std::invalid_argument("lattice period must be finite and > 0");
  }

  Real epsilon() const { return epsilon_; }
  Real force() const { return force_; }
  Real lattice_period() const { return lattice_period_; }

  /// omega_B = F d
  Real bloch_frequency() const { return force_ * lattice_period_; }
  /// T_B = 2 pi / (F d)
  Real bloch_period() const {
    return 2 * std::numbers::pi_v<Real> / bloch_frequency();
  }

  bool operator==(const BasicPhysicalParams&) const = default;

 private:
  Real epsilon_;
  Real force_;
  Real lattice_period_;
};

// ---------------------------------------------------------------------------
// Band dispersion T(q) = sum_n T_n exp(i n d q)
// ---------------------------------------------------------------------------

template <typename Real = double>
class BasicBandDispersion {
 public:
  using Complex = std::complex<Real>;
  using CoefficientMap = std::map<int, Complex>;

  /// Coefficients for n != 0. Missing partners T_{-n} are filled in as
  /// conj(T_n); a supplied partner that is not the conjugate is rejected,
  /// as is any T_0 entry.
  explicit BasicBandDispersion(Real lattice_period, CoefficientMap coefficients = {})
      : lattice_period_(lattice_period) {
    if (!(std::isfinite(lattice_period) && lattice_period > 0))
      throw std::invalid_argument("lattice period must be finite and > 0");
    for (const auto& [n, value] : coefficients) {
      if (n == 0) throw std::invalid_argument("band must have zero mean: T_0 is not allowed");
      if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw std::invalid_argument("band coefficient T_" + std::to_string(n) + " is not finite");
    }
    for (const auto& [n, value] : coefficients) {
      if (value == Complex{}) continue;
      const auto partner = coefficients.find(-n);
      if (partner == coefficients.end()) {
        coefficients_[-n] = std::conj(value);
      } else if (std::abs(partner->second - std::conj(value)) >
                 Real(1e-12) * (1 + std::abs(value))) {
        throw std::invalid_argument("band coefficients violate T_{-n} = conj(T_n) at n = " +
                                    std::to_string(n));
      }
      coefficients_[n] = value;
    }
  }

  /// T(q) = kappa cos(q d), i.e. T_{+1} = T_{-1} = kappa/2.
  static BasicBandDispersion sinusoidal(Real kappa, Real lattice_period) {
    if (kappa == 0) return BasicBandDispersion(lattice_period);
    return BasicBandDispersion(lattice_period, {{1, Complex(kappa / 2)}, {-1, Complex(kappa / 2)}});
  }

  Real lattice_period() const { return lattice_period_; }
  const CoefficientMap& coefficients() const { return coefficients_; }
  bool empty() const { return coefficients_.empty(); }

  int max_harmonic() const {
    return coefficients_.empty() ? 0 : coefficients_.rbegin()->first;
  }

  /// kappa when the band is exactly kappa cos(q d), otherwise nothing.
  std::optional<Real> sinusoidal_amplitude() const {
    if (coefficients_.size() != 2) return std::nullopt;
    const auto plus = coefficients_.find(1);
    if (plus == coefficients_.end() || plus->second.imag() != 0) return std::nullopt;
    return 2 * plus->second.real();
  }

  bool operator==(const BasicBandDispersion&) const = default;

 private:
  Real lattice_period_;
  CoefficientMap coefficients_;
};

/// T(q). Throws if the imaginary residue betrays non-Hermitian coefficients.
template <typename Real>
Real band_eval(const BasicBandDispersion<Real>& band, Real q) {
  std::complex<Real> sum{};
  const Real d = band.lattice_period();
  for (const auto& [n, value] : band.coefficients())
    sum += value * std::polar(Real(1), n * d * q);
  if (std::abs(sum.imag()) >= Real(1e-12) * (1 + std::abs(sum.real())))
    throw Error("band_eval: corrupted band coefficients (T(q) not real)");
  return sum.real();
}

/// Closed-form integral of T from 0 to q: sum_n T_n (e^{indq} - 1)/(ind).
template <typename Real>
Real band_antiderivative(const BasicBandDispersion<Real>& band, Real q) {
  std::complex<Real> sum{};
  const Real d = band.lattice_period();
  for (const auto& [n, value] : band.coefficients()) {
    const Real theta = n * d * q;
    const Real half = std::sin(theta / 2);
    // (e^{i theta} - 1)/(i n d) without cancellation near theta = 0
    const std::complex<Real> ratio = std::complex<Real>(std::sin(theta), 2 * half * half) / (n * d);
    sum += value * ratio;
  }
  return sum.real();
}

template <typename Real, typename Derived>
RVector<Real> band_eval(const BasicBandDispersion<Real>& band, const Eigen::MatrixBase<Derived>& q) {
  RVector<Real> out(q.size());
  for (Eigen::Index k = 0; k < q.size(); ++k) out[k] = band_eval(band, Real(q[k]));
  return out;
}

template <typename Real, typename Derived>
RVector<Real> band_antiderivative(const BasicBandDispersion<Real>& band,
                                  const Eigen::MatrixBase<Derived>& q) {
  RVector<Real> out(q.size());
  for (Eigen::Index k = 0; k < q.size(); ++k) out[k] = band_antiderivative(band, Real(q[k]));
  return out;
}

// ---------------------------------------------------------------------------
// Uniform periodic grid and its dual momentum grid
// ---------------------------------------------------------------------------

template <typename Real = double>
class BasicSpatialGrid {
 public:
  BasicSpatialGrid(Real x_min, Real dx, Eigen::Index n_points)
      : x_min_(x_min), dx_(dx), n_(n_points) {}

  Real x_min() const { return x_min_; }
  Real x_max() const { return x_min_ + n_ * dx_; }
  Real dx() const { return dx_; }
  Real extent() const { return n_ * dx_; }
  Eigen::Index size() const { return n_; }

  Real momentum_spacing() const { return 2 * std::numbers::pi_v<Real> / (n_ * dx_); }
  Real nyquist() const { return std::numbers::pi_v<Real> / dx_; }

  Real x(Eigen::Index j) const { return x_min_ + j * dx_; }

  /// Wrap-around order: 0, dq, ..., (n/2-1) dq, -(n/2) dq, ..., -dq.
  Real momentum(Eigen::Index k) const {
    return (k < n_ / 2 ? k : k - n_) * momentum_spacing();
  }

  RVector<Real> positions() const {
    RVector<Real> out(n_);
    for (Eigen::Index j = 0; j < n_; ++j) out[j] = x(j);
    return out;
  }

  RVector<Real> momenta() const {
    RVector<Real> out(n_);
    for (Eigen::Index k = 0; k < n_; ++k) out[k] = momentum(k);
    return out;
  }

  /// Number of grid steps in `length`, if it is an integer multiple of dx.
  std::optional<Eigen::Index> steps_in(Real length) const {
    const Real ratio = length / dx_;
    const Real rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > Real(1e-9) * std::max(Real(1), std::abs(ratio)))
      return std::nullopt;
    return static_cast<Eigen::Index>(rounded);
  }

  bool operator==(const BasicSpatialGrid&) const = default;

 private:
  Real x_min_;
  Real dx_;
  Eigen::Index n_;
};

template <typename Real>
BasicSpatialGrid<Real> make_grid(Real x_min, Real x_max, Eigen::Index n_points) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_max > x_min))
    throw std::invalid_argument("make_grid: need x_max > x_min");
  if (n_points < 16 || (n_points & (n_points - 1)) != 0)
    throw std::invalid_argument("make_grid: n_points must be a power of two >= 16, got " +
                                std::to_string(n_points));
  return BasicSpatialGrid<Real>(x_min, (x_max - x_min) / n_points, n_points);
}

// ---------------------------------------------------------------------------
// Wave function
// ---------------------------------------------------------------------------

enum class Representation { position, momentum };
enum class Direction { forward, inverse };

template <typename Real = double>
struct BasicWaveFunction {
  BasicSpatialGrid<Real> grid;
  CVector<Real> amplitudes;
  Representation representation = Representation::position;
  /// False for delocalized states (ideal Airy); norm-based observables refuse them.
  bool normalizable = true;

  BasicWaveFunction(BasicSpatialGrid<Real> g, CVector<Real> values,
                    Representation rep = Representation::position, bool is_normalizable = true)
      : grid(g), amplitudes(std::move(values)), representation(rep), normalizable(is_normalizable) {
    if (amplitudes.size() != grid.size())
      throw std::invalid_argument("wave function length does not match grid");
  }

  explicit BasicWaveFunction(BasicSpatialGrid<Real> g)
      : BasicWaveFunction(g, CVector<Real>::Zero(g.size())) {}

  /// Quadrature weight of one sample: dx in position space, dq in momentum space.
  Real measure() const {
    return representation == Representation::position ? grid.dx() : grid.momentum_spacing();
  }
};

/// Reusable transform for one grid. Holds FFT scratch state, so one instance
/// per thread.
template <typename Real = double>
class GridTransform {
 public:
  using Complex = std::complex<Real>;

  explicit GridTransform(const BasicSpatialGrid<Real>& grid) : grid_(grid) {
    const Eigen::Index n = grid.size();
    phase_.resize(n);
    for (Eigen::Index k = 0; k < n; ++k)
      phase_[k] = std::polar(Real(1), -grid.momentum(k) * grid.x_min());
    scale_ = grid.dx() / std::sqrt(2 * std::numbers::pi_v<Real>);
  }

  const BasicSpatialGrid<Real>& grid() const { return grid_; }

  /// psi~(q_k) = (dx / sqrt(2 pi)) sum_j psi_j exp(-i q_k x_j)
  void forward(const CVector<Real>& in, CVector<Real>& out) {
    fft_.fwd(out, in);
    out = (out.array() * phase_.array() * scale_).matrix();
  }

  void inverse(const CVector<Real>& in, CVector<Real>& out) {
    buffer_ = (in.array() * phase_.array().conjugate() / scale_).matrix();
    fft_.inv(out, buffer_);
  }

  /// Plain (unphased, unscaled) transforms for engines whose momentum-space
  /// operators are diagonal; the grid phases cancel between the two.
  void raw_forward(const CVector<Real>& in, CVector<Real>& out) { fft_.fwd(out, in); }
  void raw_inverse(const CVector<Real>& in, CVector<Real>& out) { fft_.inv(out, in); }

 private:
  BasicSpatialGrid<Real> grid_;
  CVector<Real> phase_;
  CVector<Real> buffer_;
  Real scale_;
  Eigen::FFT<Real> fft_;
};

template <typename Real>
BasicWaveFunction<Real> dft(const BasicWaveFunction<Real>& psi, Direction direction) {
  const bool forward = direction == Direction::forward;
  const Representation expected = forward ? Representation::position : Representation::momentum;
  if (psi.representation != expected)
    throw std::invalid_argument(forward ? "dft forward needs a position-space wave function"
                                        : "dft inverse needs a momentum-space wave function");
  GridTransform<Real> transform(psi.grid);
  CVector<Real> out(psi.grid.size());
  if (forward)
    transform.forward(psi.amplitudes, out);
  else
    transform.inverse(psi.amplitudes, out);
  return BasicWaveFunction<Real>(
      psi.grid, std::move(out), forward ? Representation::momentum : Representation::position,
      psi.normalizable);
}

template <typename Real>
std::complex<Real> inner_product(const BasicWaveFunction<Real>& a, const BasicWaveFunction<Real>& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  if (a.representation != b.representation)
    throw std::invalid_argument("inner_product: representation mismatch");
  return a.amplitudes.dot(b.amplitudes) * a.measure();  // dot() conjugates the left side
}

template <typename Real>
Real norm(const BasicWaveFunction<Real>& psi) {
  return std::sqrt(psi.amplitudes.squaredNorm() * psi.measure());
}

template <typename Real>
BasicWaveFunction<Real> normalize(BasicWaveFunction<Real> psi) {
  const Real n = norm(psi);
  if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("normalize: zero or non-finite vector");
  psi.amplitudes /= n;
  return psi;
}

/// Fraction of probability in the outer 5% of the box (both ends together).
template <typename Real>
Real boundary_leak(const BasicWaveFunction<Real>& psi, Real edge_fraction = Real(0.05)) {
  if (psi.representation != Representation::position)
    throw std::invalid_argument("boundary_leak needs a position-space wave function");
  const Eigen::Index n = psi.grid.size();
  const auto edge = static_cast<Eigen::Index>(std::ceil(edge_fraction * n));
  const Real total = psi.amplitudes.squaredNorm();
  if (!(total > 0)) return 0;
  const Real outer = psi.amplitudes.head(edge).squaredNorm() + psi.amplitudes.tail(edge).squaredNorm();
  return outer / total;
}

using PhysicalParams = BasicPhysicalParams<double>;
using BandDispersion = BasicBandDispersion<double>;
using SpatialGrid = BasicSpatialGrid<double>;
using WaveFunction = BasicWaveFunction<double>;
using Complex = std::complex<double>;

}  // namespace wstark
