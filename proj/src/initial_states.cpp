#include "wstark/initial_states.hpp"

#include "wstark/specfun.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace wstark {

namespace {

constexpr double kCoverage = 1e-10;

std::string describe(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

void require_covered(double edge_value, const char* which, const char* kind) {
  if (!(edge_value < kCoverage))
    throw std::invalid_argument(std::string(kind) + ": profile is " + describe(edge_value) + " at the " +
                                which + " edge of the box (needs < 1e-10); enlarge the grid");
}

double airy_scale(const PhysicalParams& params, const char* kind) {
  if (!(params.epsilon() > 0))
    throw std::invalid_argument(std::string(kind) + ": Airy states need epsilon > 0");
  return std::cbrt(params.force() / params.epsilon());
}

}  // namespace

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::airy_ideal: return "airy_ideal";
    case InitialKind::airy_apodized: return "airy_apodized";
  }
  return "unknown";
}

InitialKind parse_initial_kind(std::string_view name) {
  for (InitialKind k : {InitialKind::gaussian, InitialKind::airy_ideal, InitialKind::airy_apodized})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown initial state kind '" + std::string(name) + "'");
}

double smooth_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const double a = std::exp(-1 / u);
  const double b = std::exp(-1 / (1 - u));
  return a / (a + b);
}

WaveFunction build_initial(const InitialStateSpec& spec, const SpatialGrid& grid,
                           const PhysicalParams& params) {
  const Eigen::Index n = grid.size();
  CVector<double> values(n);
  const double c = spec.center;

  switch (spec.kind) {
    case InitialKind::gaussian: {
      if (!(spec.width > 0)) throw std::invalid_argument("gaussian: width must be > 0");
      const double w2 = spec.width * spec.width;
      const double left = grid.x_min() - c, right = grid.x(n - 1) - c;
      require_covered(std::exp(-left * left / w2), "left", "gaussian");
      require_covered(std::exp(-right * right / w2), "right", "gaussian");
      for (Eigen::Index j = 0; j < n; ++j) {
        const double x = grid.x(j) - c;
        values[j] = std::exp(-x * x / w2);
      }
      return normalize(WaveFunction(grid, std::move(values)));
    }

    case InitialKind::airy_ideal: {
      const double alpha = airy_scale(params, "airy_ideal");
      if (!(spec.edge_taper >= 0 && spec.edge_taper < 1))
        throw std::invalid_argument("airy_ideal: edge_taper must be in [0, 1)");
      require_covered(std::abs(airy_ai(alpha * (grid.x(n - 1) - c))), "right", "airy_ideal");
      const double ramp = spec.edge_taper * grid.extent();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double x = grid.x(j);
        const double taper = ramp > 0 ? smooth_step((x - grid.x_min()) / ramp) : 1.0;
        values[j] = taper * airy_ai(alpha * (x - c));
      }
      values /= values.cwiseAbs().maxCoeff();
      return WaveFunction(grid, std::move(values), Representation::position, false);
    }

    case InitialKind::airy_apodized: {
      const double alpha = airy_scale(params, "airy_apodized");
      if (!(spec.apodization > 0)) throw std::invalid_argument("airy_apodized: apodization a must be > 0");
      const double a = spec.apodization;
      require_covered(std::exp((grid.x_min() - c) / a), "left", "airy_apodized");
      const double right = grid.x(n - 1) - c;
      require_covered(std::exp(right / a) * std::abs(airy_ai(alpha * right)), "right", "airy_apodized");
      for (Eigen::Index j = 0; j < n; ++j) {
        const double x = grid.x(j) - c;
        values[j] = std::exp(x / a) * airy_ai(alpha * x);
      }
      return normalize(WaveFunction(grid, std::move(values)));
    }
  }
  throw std::invalid_argument("build_initial: unknown kind");
}

}  // namespace wstark
