#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>

#include "realsep/curvetopo/topology.hpp"

namespace realsep::io {

struct SvgMarker {
  std::array<double, 3> p;  // projective
  std::string color;
  std::string label;
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  std::string s = buf;
  return s == "-0.00000" ? "0.00000" : s;
}

inline bool affine(const std::array<double, 3>& p, double& x, double& y) {
  double norm = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
  if (norm == 0 || std::abs(p[2]) < 1e-9 * norm) return false;
  x = p[0] / p[2];
  y = p[1] / p[2];
  return true;
}

}  // namespace detail

/// Curve drawing in the affine chart z = 1. Polylines are broken where they
/// cross the line z = 0.
inline std::string render_svg(const CurveTopology& T, const std::vector<SvgMarker>& markers = {}) {
  static const char* palette[] = {"#1f4e9c", "#2a8a3e", "#8a2a7a", "#b8641a", "#3a8a8a", "#555555"};
  double extent = 0;
  for (const auto& c : T.components) {
    if (c.type != ComponentType::oval || c.depth < 0) continue;
    for (const auto& v : c.polyline) {
      double x, y;
      if (detail::affine(v, x, y)) extent = std::max({extent, std::abs(x), std::abs(y)});
    }
  }
  extent = extent == 0 ? 3.0 : std::min(10.0, std::max(1.5, 1.25 * extent));
  const double size = 600, scale = size / (2 * extent);
  auto sx = [&](double x) { return detail::num((x + extent) * scale); };
  auto sy = [&](double y) { return detail::num((extent - y) * scale); };
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n"
      << "<line x1=\"0\" y1=\"" << sy(0) << "\" x2=\"" << size << "\" y2=\"" << sy(0) << "\"/>\n"
      << "<line x1=\"" << sx(0) << "\" y1=\"0\" x2=\"" << sx(0) << "\" y2=\"" << size << "\"/>\n"
      << "</g>\n";
  for (size_t i = 0; i < T.components.size(); ++i) {
    const auto& c = T.components[i];
    out << "<g id=\"component-" << i << "\" fill=\"none\" stroke=\"" << palette[i % 6]
        << "\" stroke-width=\"2\" stroke-linejoin=\"round\">\n";
    std::vector<std::string> path;
    auto flush = [&] {
      if (path.size() >= 2) {
        out << "<polyline points=\"";
        for (size_t k = 0; k < path.size(); ++k) out << (k ? " " : "") << path[k];
        out << "\"/>\n";
      }
      path.clear();
    };
    const size_t n = c.polyline.size();
    for (size_t k = 0; k <= n && n > 0; ++k) {
      const auto& v = c.polyline[k % n];
      double x, y;
      bool ok = detail::affine(v, x, y);
      if (ok && k > 0) {
        const auto& u = c.polyline[k - 1];
        // sign change of z: the segment passes through infinity
        if (u[2] * v[2] < 0) flush();
      }
      if (!ok) {
        flush();
        continue;
      }
      x = std::clamp(x, -100 * extent, 100 * extent);
      y = std::clamp(y, -100 * extent, 100 * extent);
      path.push_back(sx(x) + "," + sy(y));
    }
    flush();
    out << "</g>\n";
  }
  if (!markers.empty()) {
    out << "<g stroke=\"black\" stroke-width=\"0.5\">\n";
    for (const auto& m : markers) {
      double x, y;
      if (!detail::affine(m.p, x, y)) continue;
      out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"4\" fill=\"" << m.color << "\">";
      if (!m.label.empty()) out << "<title>" << m.label << "</title>";
      out << "</circle>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace realsep::io
