#include "wstark/propagator.hpp"

#include "wstark/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace wstark {

namespace {

constexpr double kFormAgreement = 1e-10;
constexpr Complex kI{0.0, 1.0};

double sinusoidal_kappa(const RhoTable& table) {
  if (table.band.empty()) return 0.0;
  const auto kappa = table.band.sinusoidal_amplitude();
  if (!kappa) throw std::invalid_argument("closed-form weights need a sinusoidal band kappa cos(q d)");
  return *kappa;
}

// sum_n a_n conj(b_{n-l}) exp(i phi n) over the overlap of the two windows
template <typename Table>
Eigen::VectorXcd correlate(const Table& a, const Table& b, double phi) {
  const int n_max = a.n_max;
  const int l_max = 2 * n_max;
  Eigen::VectorXcd phase(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) phase[n + n_max] = std::polar(1.0, phi * n);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * l_max + 1);
  for (int l = -l_max; l <= l_max; ++l) {
    Complex sum{};
    const int lo = std::max(-n_max, l - n_max);
    const int hi = std::min(n_max, l + n_max);
    for (int n = lo; n <= hi; ++n) sum += a(n) * std::conj(b(n - l)) * phase[n + n_max];
    out[l + l_max] = sum;
  }
  return out;
}

Eigen::VectorXcd g_closed(const RhoTable& table, double t, int l_max) {
  const double kappa = sinusoidal_kappa(table);
  const double phi = table.params.bloch_frequency() * t;
  const double z = 2 * kappa / table.params.bloch_frequency() * std::sin(phi / 2);
  const double s0sq = table.s0 * table.s0;
  Eigen::VectorXcd out(2 * l_max + 1);
  const Eigen::VectorXd j = bessel_j_sequence(l_max, std::abs(z));
  for (int l = -l_max; l <= l_max; ++l) {
    // J_{-l}(z) = (-1)^l J_l(z) and J_l(-z) = (-1)^l J_l(z)
    const int m = std::abs(l);
    const bool flip = (m % 2 == 1) && ((l > 0) != (z < 0));
    const double value = flip ? -j[m] : j[m];
    out[l + l_max] = s0sq * value * std::polar(1.0, l * (std::numbers::pi + phi) / 2);
  }
  return out;
}

}  // namespace

int WeightSequence::effective_l_max(double rel) const {
  const double peak = values.cwiseAbs().maxCoeff();
  int last = 0;
  for (int l = -l_max; l <= l_max; ++l)
    if (std::abs(values[l + l_max]) >= rel * peak) last = std::max(last, std::abs(l));
  return last;
}

WeightSequence g_weights(const RhoTable& table, double t, WeightMethod method) {
  WeightSequence out;
  out.time = t;
  out.l_max = 2 * table.n_max;
  out.kind = WeightKind::G;
  out.method = method;
  out.values = method == WeightMethod::series
                   ? correlate(table, table, table.params.bloch_frequency() * t)
                   : g_closed(table, t, out.l_max);
  return out;
}

WeightSequence lambda_weights(const RhoTable& table, double t, WeightMethod method) {
  const double phi = table.params.bloch_frequency() * t;
  const double scale = 1.0 / (table.s0 * table.s0);  // F^{1/3} eps^{2/3}
  const WeightSequence g = g_weights(table, t, method);

  WeightSequence out = g;
  out.kind = WeightKind::Lambda;
  for (int l = -out.l_max; l <= out.l_max; ++l)
    out.values[l + out.l_max] = scale * g(l) * std::polar(1.0, -phi * l);

  // direct form sum_n conj(rho_n) rho_{n+l} e^{i phi n}
  double gap = 0;
  for (int l = -out.l_max; l <= out.l_max; ++l) {
    Complex direct{};
    const int lo = std::max(-table.n_max, -table.n_max - l);
    const int hi = std::min(table.n_max, table.n_max - l);
    for (int n = lo; n <= hi; ++n)
      direct += std::conj(table(n)) * table(n + l) * std::polar(1.0, phi * n);
    gap = std::max(gap, std::abs(scale * direct - out(l)));
  }
  if (gap > kFormAgreement)
    throw Error("lambda_weights: direct and G-based forms disagree by " + std::to_string(gap));
  return out;
}

Complex kernel_stark(const PhysicalParams& params, double x, double y, double t) {
  if (t == 0) throw std::invalid_argument("kernel_stark: t = 0 (kernel is a delta function)");
  const double eps = params.epsilon();
  if (!(eps > 0)) throw std::invalid_argument("kernel_stark: requires epsilon > 0");
  const double force = params.force();
  const double shift = y - x - eps * force * t * t;
  const Complex prefactor = std::sqrt(1.0 / (4.0 * std::numbers::pi * kI * eps * t));
  return prefactor * std::exp(kI * (-force * x * t - eps * force * force * t * t * t / 3 +
                                    shift * shift / (4 * eps * t)));
}

Complex kernel_general(const RhoTable& table, const WeightSequence& g, double x, double y) {
  if (g.kind != WeightKind::G) throw std::invalid_argument("kernel_general: needs G_l weights");
  const double t = g.time;
  if (t == 0) throw std::invalid_argument("kernel_general: t = 0 (kernel is a delta function)");
  const double eps = table.params.epsilon();
  const double force = table.params.force();
  const double d = table.params.lattice_period();
  const Complex prefactor = std::sqrt(1.0 / (4.0 * std::numbers::pi * kI * eps * t)) /
                            (table.s0 * table.s0) *
                            std::exp(kI * (-force * x * t - eps * force * force * t * t * t / 3));
  const int reach = g.effective_l_max();
  Complex sum{};
  for (int l = -reach; l <= reach; ++l) {
    const double shift = y - x + d * l - eps * force * t * t;
    sum += g(l) * std::polar(1.0, shift * shift / (4 * eps * t));
  }
  return prefactor * sum;
}

Complex kernel_general(const RhoTable& table, double x, double y, double t) {
  if (t == 0) throw std::invalid_argument("kernel_general: t = 0 (kernel is a delta function)");
  return kernel_general(table, g_weights(table, t), x, y);
}

ShiftMap eps0_shift_map(const CoefficientTable& sigma, double t) {
  ShiftMap map;
  map.time = t;
  map.lattice_period = sigma.params.lattice_period();
  map.phase_rate = sigma.params.force() * t;
  map.l_max = 2 * sigma.n_max;
  map.weights = sigma.params.force() * correlate(sigma, sigma, sigma.params.bloch_frequency() * t);
  return map;
}

PhiValue phi_integral(const PhysicalParams& params, double x, double t, PhiMethod method,
                      double max_residual) {
  if (t == 0) throw std::invalid_argument("phi_integral: t = 0");
  const double eps = params.epsilon();
  if (!(eps > 0)) throw std::invalid_argument("phi_integral: requires epsilon > 0");
  const double force = params.force();
  const double alpha = std::cbrt(force / eps);

  if (method == PhiMethod::closed) {
    const double shift = x - eps * force * t * t;
    const Complex prefactor = std::sqrt(1.0 / (4.0 * std::numbers::pi * kI * eps * t * alpha * alpha));
    return {prefactor * std::exp(kI * (shift * shift / (4 * eps * t) - eps * force * force * t * t * t / 3)),
            0.0};
  }

  constexpr int kLevels = 4;
  constexpr double kEta0 = 4e-4;
  constexpr double kStep = 0.02;
  const double eta_min = kEta0 / double(1 << (kLevels - 1));
  const double lo = -std::sqrt(38.0 / eta_min);  // exp(-eta xi^2) < e^-38 beyond
  const double hi = std::max(0.0, -alpha * x) + 14.0;
  const auto count = static_cast<Eigen::Index>(std::ceil((hi - lo) / kStep));

  Eigen::VectorXcd integrand(count);
  Eigen::VectorXd xi(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    xi[k] = lo + kStep * double(k);
    integrand[k] = airy_ai(xi[k]) * airy_ai(xi[k] + alpha * x) * std::polar(1.0, force * t * xi[k] / alpha);
  }

  std::vector<std::vector<Complex>> table(kLevels);
  for (int j = 0; j < kLevels; ++j) {
    const double eta = kEta0 / double(1 << j);
    Complex sum{};
    for (Eigen::Index k = 0; k < count; ++k) sum += integrand[k] * std::exp(-eta * xi[k] * xi[k]);
    table[0].push_back(kStep * sum);
  }
  for (int j = 1; j < kLevels; ++j) {
    const double factor = double(1 << j);
    for (std::size_t i = 0; i + 1 < table[j - 1].size(); ++i)
      table[j].push_back((factor * table[j - 1][i + 1] - table[j - 1][i]) / (factor - 1));
  }
  const double residual = std::abs(table[kLevels - 2][1] - table[kLevels - 2][0]);
  if (residual > max_residual)
    throw ConvergenceError("phi_integral: extrapolation residual " + std::to_string(residual) +
                           " exceeds " + std::to_string(max_residual));
  return {table[kLevels - 1][0], residual};
}

}  // namespace wstark
