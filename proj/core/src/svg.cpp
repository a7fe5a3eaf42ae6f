#include "hyperlex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hyperlex {

namespace {

std::string fixed(double value, int precision = 2) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, value);
  return buffer;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_disk_svg(
    std::span<const SvgPoint> points, const SvgOptions& options,
    std::span<const std::pair<std::string, std::string>> metadata) {
  const double margin = 64.0;
  const double cx = margin;
  const double cy = options.height - margin;
  const double plot_radius =
      std::max(std::min(options.width, options.height) - 2.0 * margin, 40.0);

  double max_rho = 0.0;
  for (const SvgPoint& p : points) max_rho = std::max(max_rho, p.rho_prime);
  if (max_rho <= 0.0) max_rho = 1.0;
  const double data_radius = max_rho * 1.1;
  const double scale = plot_radius / data_radius;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) +
         "\">\n";
  svg += "<desc>\n";
  for (const auto& [key, value] : metadata) {
    svg += escape_xml(key) + "=" + escape_xml(value) + "\n";
  }
  svg += "</desc>\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(cx) + "\" y=\"28\" font-family=\"sans-serif\" " +
         "font-size=\"16\" fill=\"#333\">" + escape_xml(options.title) +
         "</text>\n";

  // Polar grid: quarter-circle arcs at even rho' steps, radial spokes
  // every 15 degrees.
  svg += "<g stroke=\"#cccccc\" stroke-width=\"1\" fill=\"none\">\n";
  const int arc_count = 4;
  for (int i = 1; i <= arc_count; ++i) {
    const double r = plot_radius * i / arc_count;
    svg += "<path d=\"M " + fixed(cx + r) + " " + fixed(cy) + " A " + fixed(r) +
           " " + fixed(r) + " 0 0 0 " + fixed(cx) + " " + fixed(cy - r) +
           "\"/>\n";
  }
  for (int degrees = 0; degrees <= 90; degrees += 15) {
    const double radians = degrees * M_PI / 180.0;
    svg += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(cy) + "\" x2=\"" +
           fixed(cx + plot_radius * std::cos(radians)) + "\" y2=\"" +
           fixed(cy - plot_radius * std::sin(radians)) + "\"/>\n";
  }
  svg += "</g>\n";

  // Grid labels: rho' ticks along the horizontal axis, theta' in degrees
  // along the outer arc.
  svg += "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#888\">\n";
  for (int i = 1; i <= arc_count; ++i) {
    const double r = plot_radius * i / arc_count;
    svg += "<text x=\"" + fixed(cx + r - 10) + "\" y=\"" + fixed(cy + 14) +
           "\">" + fixed(data_radius * i / arc_count) + "</text>\n";
  }
  for (int degrees = 0; degrees <= 90; degrees += 30) {
    const double radians = degrees * M_PI / 180.0;
    const double r = plot_radius + 8.0;
    svg += "<text x=\"" + fixed(cx + r * std::cos(radians)) + "\" y=\"" +
           fixed(cy - r * std::sin(radians)) + "\">" + std::to_string(degrees) +
           "&#176;</text>\n";
  }
  svg += "</g>\n";

  // Axis names.
  svg += "<text x=\"" + fixed(cx + plot_radius * 0.45) + "\" y=\"" +
         fixed(cy + 34) + "\" font-family=\"sans-serif\" font-size=\"13\" " +
         "fill=\"#333\">popularity (&#961;&#8242;)</text>\n";
  svg += "<text x=\"" + fixed(cx - 40) + "\" y=\"" +
         fixed(cy - plot_radius * 0.5) +
         "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#333\" " +
         "transform=\"rotate(-90 " + fixed(cx - 40) + " " +
         fixed(cy - plot_radius * 0.5) + ")\">similarity (&#952;&#8242;)</text>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (const SvgPoint& p : points) {
    const double r = p.rho_prime * scale;
    const double px = cx + r * std::cos(p.theta_prime);
    const double py = cy - r * std::sin(p.theta_prime);
    const char* color = p.clamped ? "#d62728" : "#1f77b4";
    svg += "<circle cx=\"" + fixed(px) + "\" cy=\"" + fixed(py) +
           "\" r=\"3\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + fixed(px + 5) + "\" y=\"" + fixed(py - 5) +
           "\" fill=\"#333\">" + escape_xml(p.label) + "</text>\n";
  }
  svg += "</g>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace hyperlex
