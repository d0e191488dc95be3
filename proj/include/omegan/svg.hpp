#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "omegan/error.hpp"
#include "omegan/oracle.hpp"
#include "omegan/partition.hpp"
#include "omegan/region.hpp"

namespace omegan {

namespace detail {

inline std::string cell_color(std::size_t i) {
  static const char* const palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                        "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
  if (i < 12) return palette[i];
  std::ostringstream s;
  s << "hsl(" << (i * 137) % 360 << ",55%," << 45 + (i % 3) * 10 << "%)";
  return s.str();
}

inline std::string xml_escape(const std::string& in) {
  std::string out;
  for (char c : in) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// Does the cell continue without bound along axis from point p?
inline bool runs_to_omega(const Region& cell, const Point& p, std::size_t axis) {
  for (const auto& b : cell.boxes()) {
    if (b.contains(p) && b[axis].is_unbounded()) return true;
  }
  return false;
}

}  // namespace detail

/// Drawing of a two-dimensional partition on [0, K]^2, K = max constant + 2.
/// Coordinate 0 runs right, coordinate 1 runs up; arrows in the margins mark
/// cells that continue to OMEGA along that axis.
inline std::string render_svg(const Partition& p) {
  if (p.dim() != 2) throw DimensionError("viz: partition must be two-dimensional");
  const std::uint64_t k = max_constant(p) + 2;
  const int unit = 24;
  const int margin = 30;
  const int side = static_cast<int>(k + 1) * unit;
  const int legend_top = margin + side + 2 * unit;
  const int width = margin * 2 + side + 2 * unit;
  const int height = legend_top + static_cast<int>(p.size()) * 20 + margin;

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"monospace\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto x_of = [&](std::uint64_t a) { return margin + static_cast<int>(a) * unit; };
  auto y_of = [&](std::uint64_t b) { return margin + 2 * unit + side - static_cast<int>(b + 1) * unit; };

  for (std::uint64_t a = 0; a <= k; ++a) {
    for (std::uint64_t b = 0; b <= k; ++b) {
      if (!member(Point{a, b}, p.carrier())) continue;
      const std::size_t c = cell_of(p, Point{a, b});
      s << "<rect x=\"" << x_of(a) << "\" y=\"" << y_of(b) << "\" width=\"" << unit << "\" height=\"" << unit
        << "\" fill=\"" << detail::cell_color(c) << "\" stroke=\"white\"><title>cell " << c << " (" << a << "," << b
        << ")</title></rect>\n";
    }
  }
  // arrow bands: right margin for coordinate 0, top margin for coordinate 1
  for (std::uint64_t t = 0; t <= k; ++t) {
    const Point right{k, t};
    if (member(right, p.carrier())) {
      const std::size_t c = cell_of(p, right);
      if (detail::runs_to_omega(p.cell(c), right, 0)) {
        const int y = y_of(t) + unit / 2;
        const int x = x_of(k) + unit + 4;
        s << "<path d=\"M" << x << " " << y << " h" << unit - 8 << " m-6 -5 l6 5 l-6 5\" stroke=\""
          << detail::cell_color(c) << "\" stroke-width=\"3\" fill=\"none\"/>\n";
      }
    }
    const Point top{t, k};
    if (member(top, p.carrier())) {
      const std::size_t c = cell_of(p, top);
      if (detail::runs_to_omega(p.cell(c), top, 1)) {
        const int x = x_of(t) + unit / 2;
        const int y = y_of(k) - 4;
        s << "<path d=\"M" << x << " " << y << " v-" << unit - 8 << " m-5 6 l5 -6 l5 6\" stroke=\""
          << detail::cell_color(c) << "\" stroke-width=\"3\" fill=\"none\"/>\n";
      }
    }
  }
  for (std::uint64_t t = 0; t <= k; ++t) {
    s << "<text x=\"" << x_of(t) + unit / 2 - 3 << "\" y=\"" << y_of(0) + unit + 12 << "\">" << t << "</text>\n";
    s << "<text x=\"" << margin - 18 << "\" y=\"" << y_of(t) + unit / 2 + 4 << "\">" << t << "</text>\n";
  }
  for (std::size_t c = 0; c < p.size(); ++c) {
    const int y = legend_top + static_cast<int>(c) * 20;
    s << "<rect x=\"" << margin << "\" y=\"" << y << "\" width=\"14\" height=\"14\" fill=\""
      << detail::cell_color(c) << "\"/>\n";
    s << "<text x=\"" << margin + 20 << "\" y=\"" << y + 11 << "\">cell " << c << ": "
      << detail::xml_escape(to_string(p.cell(c))) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace omegan
