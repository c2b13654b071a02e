#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "wumetric/kobayashi.hpp"
#include "wumetric/wu_metric.hpp"

namespace wumetric {

/// Draw the indicatrix boundary arcs and the fitted ellipse in the square
/// coordinates (x, y) = (|v_hat|^2, |v_1|^2), with the touching sample
/// marked. Plain SVG, no dependencies.
inline std::string render_fit_svg(const EggParams& params, double p, const EllipsoidFit& fit,
                                  const std::vector<KCurveSample>& samples) {
  const double width = 640.0, height = 480.0, margin = 60.0;
  double x_max = 1.0 / fit.r2, y_max = 1.0 / fit.r1;
  for (const KCurveSample& s : samples) {
    x_max = std::max(x_max, s.x);
    y_max = std::max(y_max, s.y);
  }
  x_max *= 1.05;
  y_max *= 1.05;
  const auto px = [&](double x) { return margin + (width - 2 * margin) * x / x_max; };
  const auto py = [&](double y) { return height - margin - (height - 2 * margin) * y / y_max; };
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };

  std::string upper, lower;
  double best = -1.0;
  double touch_x = 0.0, touch_y = 0.0;
  for (const KCurveSample& s : samples) {
    std::string& target = s.branch == KCurveSample::Branch::Upper ? upper : lower;
    target += num(px(s.x)) + "," + num(py(s.y)) + " ";
    const double activity = fit.r1 * s.y + fit.r2 * s.x;
    if (activity > best) {
      best = activity;
      touch_x = s.x;
      touch_y = s.y;
    }
  }
  std::string ellipse;
  for (int i = 0; i <= 200; ++i) {
    const double x = (1.0 / fit.r2) * i / 200.0;
    const double y = (1.0 - fit.r2 * x) / fit.r1;
    ellipse += num(px(x)) + "," + num(py(y)) + " ";
  }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "  <rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "  <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(x_max)) +
         "\" y2=\"" + num(py(0)) + "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(0)) +
         "\" y2=\"" + num(py(y_max)) + "\" stroke=\"black\"/>\n";
  svg += "  <polyline points=\"" + upper +
         "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  svg += "  <polyline points=\"" + lower +
         "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";
  svg += "  <polyline points=\"" + ellipse +
         "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  svg += "  <circle cx=\"" + num(px(touch_x)) + "\" cy=\"" + num(py(touch_y)) +
         "\" r=\"5\" fill=\"#d62728\"/>\n";
  svg += "  <text x=\"" + num(margin) + "\" y=\"30\" font-family=\"sans-serif\" font-size=\"15\">"
         "indicatrix arcs and fitted ellipse, m=" + num(params.m) + " p=" + num(p) +
         " (square coordinates x=|v_hat|^2, y=|v_1|^2)</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace wumetric
