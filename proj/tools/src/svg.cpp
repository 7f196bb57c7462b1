#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cli_svg {

namespace {

constexpr double kWidth = 660, kHeight = 460;
constexpr double kLeft = 70, kRight = 630, kTop = 50, kBottom = 410;

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double nice_step(double range) {
  if (range <= 0.0) return 1.0;
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0}) {
    if (raw <= mult * mag) return mult * mag;
  }
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi == lo) hi = lo + 1.0;
  }
};

}  // namespace

std::string chart(const std::string& title, const std::string& xlabel,
                  const std::string& ylabel, const Bars* bars,
                  const std::vector<Series>& lines) {
  Range rx, ry;
  ry.add(0.0);
  if (bars) {
    for (double v : bars->lo) rx.add(v);
    for (double v : bars->hi) rx.add(v);
    for (double v : bars->y) ry.add(v);
  }
  for (const auto& s : lines) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
  }
  rx.finish();
  ry.finish();

  const auto px = [&](double x) {
    return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * (kRight - kLeft);
  };
  const auto py = [&](double y) {
    return kBottom - (y - ry.lo) / (ry.hi - ry.lo) * (kBottom - kTop);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"460\" "
         "viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect width=\"660\" height=\"460\" fill=\"white\"/>\n";
  out += "<text x=\"330\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + esc(title) + "</text>\n";

  if (bars) {
    for (std::size_t i = 0; i < bars->y.size(); ++i) {
      const double x0 = px(bars->lo[i]), x1 = px(bars->hi[i]);
      const double y0 = py(bars->y[i]);
      out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" +
             num(std::max(0.5, x1 - x0)) + "\" height=\"" + num(kBottom - y0) +
             "\" fill=\"#9ecae1\" stroke=\"#4292c6\" stroke-width=\"0.5\"/>\n";
    }
  }

  for (const auto& s : lines) {
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!pts.empty()) pts += ' ';
      pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
  }

  // axes above the data so bars do not cover them
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(kRight) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";

  const double sx = nice_step(rx.hi - rx.lo);
  for (double t = std::ceil(rx.lo / sx) * sx; t <= rx.hi + 1e-12 * sx; t += sx) {
    const double x = px(t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(kBottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           num(t) + "</text>\n";
  }
  const double sy = nice_step(ry.hi - ry.lo);
  for (double t = std::ceil(ry.lo / sy) * sy; t <= ry.hi + 1e-12 * sy; t += sy) {
    const double y = py(t);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 9) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(t) +
           "</text>\n";
  }

  out += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         esc(xlabel) + "</text>\n";
  out += "<text x=\"18\" y=\"" + num((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + num((kTop + kBottom) / 2) + ")\">" +
         esc(ylabel) + "</text>\n";

  double ly = kTop + 8;
  for (const auto& s : lines) {
    if (s.name.empty()) continue;
    out += "<line x1=\"" + num(kRight - 150) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kRight - 120) + "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    out += "<text x=\"" + num(kRight - 112) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + esc(s.name) + "</text>\n";
    ly += 18;
  }

  out += "</svg>\n";
  return out;
}

}  // namespace cli_svg
