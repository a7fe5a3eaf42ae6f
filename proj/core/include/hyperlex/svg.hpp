#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hyperlex {

struct SvgPoint {
  std::string label;
  double rho_prime;
  double theta_prime;
  bool clamped;
};

struct SvgOptions {
  int width = 760;
  int height = 680;
  std::string title = "Poincare disk embedding";
};

/// Standalone SVG of a quarter-disk sector with polar gridlines; the
/// radial axis is labeled "popularity", the angular axis "similarity".
/// Output is byte-deterministic for identical inputs.
std::string render_disk_svg(
    std::span<const SvgPoint> points, const SvgOptions& options,
    std::span<const std::pair<std::string, std::string>> metadata);

}  // namespace hyperlex
