#include "wstark/export.hpp"

#include "wstark/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace wstark {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t swapped = 0;
    for (int b = 0; b < 8; ++b) swapped |= ((bits >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return swapped;
  }
  return bits;
}

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& record) {
  auto out = open_for_writing(path);
  out << "t,centroid,width,prev,norm\n";
  for (std::size_t k = 0; k < record.times.size(); ++k)
    out << format_value(record.times[k]) << ',' << format_value(record.centroid[k]) << ','
        << format_value(record.width[k]) << ',' << format_value(record.revival[k]) << ','
        << format_value(record.norm[k]) << '\n';
  finish(out, path);
}

std::filesystem::path density_sidecar(const std::filesystem::path& path) {
  std::filesystem::path sidecar = path;
  return sidecar.replace_extension(".txt");
}

void write_density(const std::filesystem::path& path, const Eigen::MatrixXd& density,
                   const std::map<std::string, std::string>& metadata) {
  {
    auto out = open_for_writing(path, std::ios::binary);
    std::vector<std::uint64_t> row(density.cols());
    for (Eigen::Index r = 0; r < density.rows(); ++r) {
      for (Eigen::Index c = 0; c < density.cols(); ++c)
        row[c] = to_little_endian(std::bit_cast<std::uint64_t>(density(r, c)));
      out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * sizeof(std::uint64_t)));
    }
    finish(out, path);
  }
  const auto sidecar = density_sidecar(path);
  auto out = open_for_writing(sidecar);
  out << "format = float64 little-endian row-major\n";
  out << "rows = " << density.rows() << "\n";
  out << "cols = " << density.cols() << "\n";
  for (const auto& [key, value] : metadata) out << key << " = " << value << "\n";
  finish(out, sidecar);
}

Eigen::MatrixXd read_density(const std::filesystem::path& path) {
  std::ifstream meta(density_sidecar(path));
  if (!meta) throw Error("missing density sidecar " + density_sidecar(path).string());
  Eigen::Index rows = -1, cols = -1;
  std::string line;
  while (std::getline(meta, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    if (key == "rows") rows = std::stoll(line.substr(eq + 3));
    if (key == "cols") cols = std::stoll(line.substr(eq + 3));
  }
  if (rows < 0 || cols < 0) throw Error("density sidecar lacks rows/cols: " + density_sidecar(path).string());

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  Eigen::MatrixXd density(rows, cols);
  std::vector<std::uint64_t> row(cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * sizeof(std::uint64_t)));
    if (!in) throw Error("density file truncated: " + path.string());
    for (Eigen::Index c = 0; c < cols; ++c) density(r, c) = std::bit_cast<double>(to_little_endian(row[c]));
  }
  return density;
}

void write_heatmap_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& density, bool per_frame) {
  auto out = open_for_writing(path, std::ios::binary);
  out << "P5\n" << density.cols() << ' ' << density.rows() << "\n255\n";
  const double global = density.size() > 0 ? density.maxCoeff() : 0.0;
  std::vector<unsigned char> pixels(density.cols());
  for (Eigen::Index r = 0; r < density.rows(); ++r) {
    const double top = per_frame ? density.row(r).maxCoeff() : global;
    for (Eigen::Index c = 0; c < density.cols(); ++c) {
      const double level = top > 0 ? std::clamp(density(r, c) / top, 0.0, 1.0) : 0.0;
      pixels[c] = static_cast<unsigned char>(std::lround(255 * level));
    }
    out.write(reinterpret_cast<const char*>(pixels.data()), std::streamsize(pixels.size()));
  }
  finish(out, path);
}

}  // namespace wstark
