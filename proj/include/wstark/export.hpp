// File formats.
//
// trajectory CSV: header `t,centroid,width,prev,norm`, one row per record,
//   values printed with 17 significant digits.
// density: row-major little-endian float64, rows = time records, columns =
//   grid points, plus a sidecar `<name>.txt` of `key = value` lines giving
//   rows, cols, x_min, dx and the physical parameters.
// heatmap: binary PGM (P5), 8-bit grayscale, one column per grid point, one
//   row per record, linear from 0 to the frame (or global) maximum.
#pragma once

#include "wstark/observables.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <map>
#include <string>

namespace wstark {

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& record);

/// `metadata` lines are appended to the sidecar after rows/cols.
void write_density(const std::filesystem::path& path, const Eigen::MatrixXd& density,
                   const std::map<std::string, std::string>& metadata = {});

/// Reads a density file using its sidecar for the dimensions.
Eigen::MatrixXd read_density(const std::filesystem::path& path);

/// Sidecar path for a density file: same stem, `.txt` extension.
std::filesystem::path density_sidecar(const std::filesystem::path& path);

void write_heatmap_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& density,
                       bool per_frame = true);

}  // namespace wstark
