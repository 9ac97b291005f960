// Airy Ai and integer-order Bessel J_n for real arguments.
//
// Ai: Maclaurin series in extended precision on [-8, 7], the decaying
// asymptotic expansion for x >= 7 and the oscillatory one for x <= -8.
// J_n: Miller's downward recurrence normalized with the sum rule
// J_0 + 2 sum J_{2k} = 1; a short power series for tiny arguments.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstark {

namespace detail {

#if defined(__SIZEOF_FLOAT128__)
using WideReal = __float128;
#else
using WideReal = long double;
#endif

inline constexpr double kAiryMaclaurinLower = -8.0;
inline constexpr double kAiryMaclaurinUpper = 7.0;

/// Ai(x) from its Maclaurin series, summed in WideReal. Accurate to ~1e-15
/// absolute on [-8, 7]; usable (with growing cancellation) beyond.
template <typename Real>
Real airy_ai_maclaurin(Real x) {
  // Ai(0) = 0.355028053887817239260063186004183176 and
  // -Ai'(0) = 0.258819403792806798405183560189203963 as double-double pairs
  const WideReal c1 = WideReal(0.3550280538878172) + WideReal(2.05233632436212e-17);
  const WideReal c2 = WideReal(0.2588194037928068) + WideReal(-2.522243111610832e-17);
  const WideReal z = static_cast<WideReal>(static_cast<long double>(x));
  const WideReal z3 = z * z * z;
  WideReal f_term = 1, g_term = z;
  WideReal f_sum = 1, g_sum = z;
  WideReal largest = 1;
  for (int k = 1; k < 400; ++k) {
    f_term *= z3 / WideReal((3 * k - 1) * (3 * k));
    g_term *= z3 / WideReal((3 * k) * (3 * k + 1));
    f_sum += f_term;
    g_sum += g_term;
    const WideReal mag_f = f_term < 0 ? -f_term : f_term;
    const WideReal mag_g = g_term < 0 ? -g_term : g_term;
    largest = std::max({largest, mag_f, mag_g});
    if (mag_f + mag_g < WideReal(1e-30L) * largest && k > 3) break;
  }
  return static_cast<Real>(static_cast<long double>(c1 * f_sum - c2 * g_sum));
}

/// u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2)), the Airy asymptotic coefficients.
inline const std::vector<long double>& airy_asymptotic_coefficients() {
  static const std::vector<long double> u = [] {
    std::vector<long double> v{1.0L};
    for (int k = 1; k < 80; ++k)
      v.push_back(v.back() * (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) /
                  (216.0L * k * (2.0L * k - 1)));
    return v;
  }();
  return u;
}

/// Decaying-side expansion, x > 0.
template <typename Real>
Real airy_ai_asymptotic_positive(Real x) {
  const long double z = x;
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  if (zeta > 11000.0L) return Real(0);
  const auto& u = airy_asymptotic_coefficients();
  long double sum = 0, power = 1, previous = std::numeric_limits<long double>::infinity();
  for (std::size_t k = 0; k < u.size(); ++k, power *= zeta) {
    const long double term = u[k] / power;
    if (term > previous) break;  // optimal truncation
    sum += (k % 2 == 0 ? term : -term);
    if (term < 1e-21L) break;
    previous = term;
  }
  const long double pi = std::numbers::pi_v<long double>;
  return static_cast<Real>(std::exp(-zeta) / (2 * std::sqrt(pi) * std::pow(z, 0.25L)) * sum);
}

/// Oscillatory-side expansion, x < 0.
template <typename Real>
Real airy_ai_asymptotic_negative(Real x) {
  const long double z = -static_cast<long double>(x);
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  const auto& u = airy_asymptotic_coefficients();
  long double even = 0, odd = 0, power = 1;
  long double previous = std::numeric_limits<long double>::infinity();
  for (std::size_t k = 0; k < u.size(); ++k, power *= zeta) {
    const long double term = u[k] / power;
    if (term > previous) break;
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0)
      even += sign * term;
    else
      odd += sign * term;
    if (term < 1e-21L) break;
    previous = term;
  }
  const long double pi = std::numbers::pi_v<long double>;
  const long double phase = zeta - pi / 4;
  return static_cast<Real>((std::cos(phase) * even + std::sin(phase) * odd) /
                           (std::sqrt(pi) * std::pow(z, 0.25L)));
}

}  // namespace detail

/// Airy function of the first kind.
template <typename Real>
Real airy_ai(Real x) {
  if (std::isnan(x)) return x;
  if (x >= Real(detail::kAiryMaclaurinUpper)) return detail::airy_ai_asymptotic_positive(x);
  if (x <= Real(detail::kAiryMaclaurinLower)) return detail::airy_ai_asymptotic_negative(x);
  return detail::airy_ai_maclaurin(x);
}

inline constexpr int kMaxBesselOrder = 10000;

/// J_0(x), ..., J_{n_max}(x) by Miller's algorithm.
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> bessel_j_sequence(int n_max, Real x) {
  if (n_max < 0 || n_max > kMaxBesselOrder)
    throw std::out_of_range("bessel_j_sequence: order " + std::to_string(n_max) + " out of range");
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  Vec out = Vec::Zero(n_max + 1);
  if (x == 0) {
    out[0] = 1;
    return out;
  }
  const bool negative = x < 0;
  const long double ax = std::abs(static_cast<long double>(x));

  const long double reach = std::max<long double>(n_max, std::ceil(ax));
  int start = static_cast<int>(reach + 30 + std::sqrt(160.0L * reach));
  start += start % 2;  // even, so the normalization sum picks up J_start

  std::vector<long double> j(start + 2, 0.0L);
  j[start + 1] = 0;
  j[start] = 1e-30L;
  long double norm_sum = 0;
  constexpr long double kRescale = 1e300L;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0L * k / ax) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > kRescale) {
      for (int m = k - 1; m <= start; ++m) j[m] /= kRescale;
      norm_sum /= kRescale;
    }
    if (k % 2 == 0) norm_sum += 2 * j[k];
  }
  norm_sum += j[0];
  for (int n = 0; n <= n_max; ++n) {
    long double value = j[n] / norm_sum;
    if (negative && (n % 2 == 1)) value = -value;
    out[n] = static_cast<Real>(value);
  }
  return out;
}

/// Bessel function of the first kind, integer order. J_{-n} = (-1)^n J_n exactly.
template <typename Real>
Real bessel_j(int n, Real x) {
  if (std::abs(n) > kMaxBesselOrder)
    throw std::out_of_range("bessel_j: order " + std::to_string(n) + " exceeds 10^4");
  const int m = std::abs(n);
  const Real parity = (n < 0 && (m % 2 == 1)) ? Real(-1) : Real(1);
  if (x == 0) return m == 0 ? Real(1) : Real(0);
  if (std::abs(x) < Real(1e-3)) {
    // (x/2)^m / m! * sum_k (-x^2/4)^k / (k! (m+k)!/m!)
    const long double h = static_cast<long double>(x) / 2;
    long double lead = 1;
    for (int k = 1; k <= m; ++k) {
      lead *= h / k;
      if (lead == 0) return Real(0);
    }
    long double term = 1, sum = 1;
    for (int k = 1; k < 12; ++k) {
      term *= -h * h / (static_cast<long double>(k) * (m + k));
      sum += term;
    }
    return parity * static_cast<Real>(lead * sum);
  }
  return parity * bessel_j_sequence(m, x)[m];
}

}  // namespace wstark
