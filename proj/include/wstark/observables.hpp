// Scalar diagnostics of wave-function snapshots. Moments of non-normalizable
// states are undefined, so every function here rejects them.
#pragma once

#include "wstark/core.hpp"
#include "wstark/evolve.hpp"

#include <string>
#include <vector>

namespace wstark {

/// <x> = int x |psi|^2 dx (trapezoid on the periodic grid).
double centroid(const WaveFunction& psi);

/// sqrt(<x^2> - <x>^2).
double width(const WaveFunction& psi);

/// <p>, computed in the momentum representation.
double mean_momentum(const WaveFunction& psi);

/// |<psi0|psi_t>|^2.
double revival_probability(const WaveFunction& psi0, const WaveFunction& psi_t);

/// x0 + 2 eps p0 t - eps F t^2.
double parabolic_reference(const PhysicalParams& params, double x0, double p0, double t);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> centroid;  ///< NaN for non-normalizable states
  std::vector<double> width;     ///< NaN for non-normalizable states
  std::vector<double> revival;   ///< NaN for non-normalizable states
  std::vector<double> norm;      ///< ||psi(t)|| / ||psi(0)||
  std::string engine;
  std::string scenario;
};

/// Appends one sample (t, psi) measured against the initial state psi0.
void append_sample(TrajectoryRecord& record, const WaveFunction& psi0, double t, const WaveFunction& psi);

TrajectoryRecord make_trajectory(const TimeSeries& series, const WaveFunction& psi0,
                                 const std::string& engine, const std::string& scenario);

}  // namespace wstark
