#include "wstark/observables.hpp"

#include <cmath>
#include <limits>

namespace wstark {

namespace {

void require_position(const WaveFunction& psi, const char* who) {
  if (psi.representation != Representation::position)
    throw std::invalid_argument(std::string(who) + ": needs a position-space wave function");
  if (!psi.normalizable)
    throw std::invalid_argument(std::string(who) + ": moments of a non-normalizable state are undefined");
}

// (sum |psi|^2, sum x |psi|^2, sum x^2 |psi|^2) times dx, with x measured from a
// reference point to keep the second moment well conditioned.
struct Moments {
  double m0 = 0, m1 = 0, m2 = 0;
};

Moments moments(const WaveFunction& psi, double origin) {
  Moments out;
  for (Eigen::Index j = 0; j < psi.grid.size(); ++j) {
    const double density = std::norm(psi.amplitudes[j]);
    const double x = psi.grid.x(j) - origin;
    out.m0 += density;
    out.m1 += x * density;
    out.m2 += x * x * density;
  }
  const double dx = psi.grid.dx();
  out.m0 *= dx;
  out.m1 *= dx;
  out.m2 *= dx;
  return out;
}

}  // namespace

double centroid(const WaveFunction& psi) {
  require_position(psi, "centroid");
  const Moments m = moments(psi, 0.0);
  return m.m1 / m.m0;
}

double width(const WaveFunction& psi) {
  require_position(psi, "width");
  const double center = centroid(psi);
  const Moments m = moments(psi, center);
  const double mean = m.m1 / m.m0;
  return std::sqrt(std::max(0.0, m.m2 / m.m0 - mean * mean));
}

double mean_momentum(const WaveFunction& psi) {
  require_position(psi, "mean_momentum");
  const WaveFunction spectrum = dft(psi, Direction::forward);
  double weighted = 0, total = 0;
  for (Eigen::Index k = 0; k < spectrum.grid.size(); ++k) {
    const double density = std::norm(spectrum.amplitudes[k]);
    weighted += spectrum.grid.momentum(k) * density;
    total += density;
  }
  return weighted / total;
}

double revival_probability(const WaveFunction& psi0, const WaveFunction& psi_t) {
  if (!psi0.normalizable || !psi_t.normalizable)
    throw std::invalid_argument("revival_probability: needs normalizable states");
  return std::norm(inner_product(psi0, psi_t));
}

double parabolic_reference(const PhysicalParams& params, double x0, double p0, double t) {
  const double eps = params.epsilon();
  return x0 + 2 * eps * p0 * t - eps * params.force() * t * t;
}

void append_sample(TrajectoryRecord& record, const WaveFunction& psi0, double t, const WaveFunction& psi) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  record.times.push_back(t);
  record.norm.push_back(norm(psi) / norm(psi0));
  const bool defined = psi.normalizable && psi0.normalizable;
  record.centroid.push_back(defined ? centroid(psi) : nan);
  record.width.push_back(defined ? width(psi) : nan);
  record.revival.push_back(defined ? revival_probability(psi0, psi) : nan);
}

TrajectoryRecord make_trajectory(const TimeSeries& series, const WaveFunction& psi0,
                                 const std::string& engine, const std::string& scenario) {
  TrajectoryRecord record;
  record.engine = engine;
  record.scenario = scenario;
  for (std::size_t k = 0; k < series.states.size(); ++k)
    append_sample(record, psi0, series.times[k], series.states[k]);
  return record;
}

}  // namespace wstark
