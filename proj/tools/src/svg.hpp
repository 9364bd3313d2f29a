#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace fringekit::svg {

inline std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

/// Minimal deterministic SVG line plot: one polyline in a framed plot area
/// with five labeled ticks per axis. Output depends only on the data and
/// labels, so repeated runs are byte-identical.
inline std::string line_plot(const std::vector<double>& xs,
                             const std::vector<double>& ys,
                             const std::string& x_label,
                             const std::string& y_label) {
  const double width = 960, height = 360;
  const double ml = 72, mr = 24, mt = 20, mb = 48;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x_min = xs.front(), x_max = xs.front();
  double y_min = ys.front(), y_max = ys.front();
  for (double x : xs) { x_min = std::min(x_min, x); x_max = std::max(x_max, x); }
  for (double y : ys) { y_min = std::min(y_min, y); y_max = std::max(y_max, y); }
  if (x_max == x_min) x_max = x_min + 1;
  const double y_pad = (y_max == y_min) ? 1.0 : 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double fy = y_min + (y_max - y_min) * i / 4.0;
    const double gx = px(fx), gy = py(fy);
    out += "<line x1=\"" + fmt(gx, "%.2f") + "\" y1=\"" + fmt(mt + ph) +
           "\" x2=\"" + fmt(gx, "%.2f") + "\" y2=\"" + fmt(mt + ph + 5) +
           "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + fmt(gx, "%.2f") + "\" y=\"" + fmt(mt + ph + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           fmt(fx) + "</text>\n";
    out += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(gy, "%.2f") +
           "\" x2=\"" + fmt(ml) + "\" y2=\"" + fmt(gy, "%.2f") +
           "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(gy + 4, "%.2f") +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           fmt(fy) + "</text>\n";
  }
  out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 10) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         x_label + "</text>\n";
  out += "<text x=\"14\" y=\"" + fmt(mt + ph / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 14 " + fmt(mt + ph / 2) + ")\">" + y_label +
         "</text>\n";

  out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += fmt(px(xs[i]), "%.2f") + "," + fmt(py(ys[i]), "%.2f");
  }
  out += "\"/>\n</svg>\n";
  return out;
}

}  // namespace fringekit::svg
