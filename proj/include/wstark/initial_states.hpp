// Initial conditions: Gaussian, ideal Airy and exponentially apodized Airy.
#pragma once

#include "wstark/core.hpp"

#include <string_view>

namespace wstark {

enum class InitialKind { gaussian, airy_ideal, airy_apodized };

std::string_view to_string(InitialKind kind);
InitialKind parse_initial_kind(std::string_view name);

struct InitialStateSpec {
  InitialKind kind = InitialKind::gaussian;
  double width = 5;         ///< Gaussian w in exp(-x^2/w^2)
  double apodization = 0;   ///< a in exp(x/a)
  double center = 0;        ///< shifts the profile to x - center
  double edge_taper = 0.1;  ///< ideal Airy: fraction of the box, at the left edge, rolled off smoothly
};

/// gaussian: exp(-(x-c)^2/w^2), unit norm.
/// airy_ideal: Ai(alpha (x-c)), peak modulus 1, tagged non-normalizable; the
///   truncated oscillatory tail is rolled off over the leftmost `edge_taper`
///   of the box so the cut does not radiate into the interior.
/// airy_apodized: N exp((x-c)/a) Ai(alpha (x-c)), unit norm on the grid.
/// Throws if the profile is not negligible (1e-10) at the box edges, or for
/// Airy kinds with eps = 0.
WaveFunction build_initial(const InitialStateSpec& spec, const SpatialGrid& grid,
                           const PhysicalParams& params);

/// Smooth step: 0 for u <= 0, 1 for u >= 1, infinitely differentiable.
double smooth_step(double u);

}  // namespace wstark
