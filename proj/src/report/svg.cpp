#include "probe/report/svg.hpp"

#include "probe/report/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace probe::report {

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

const Style& default_style() {
  static const Style s;
  return s;
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto mix = [t](int x, int y) { return static_cast<int>(std::lround(x + (y - x) * t)); };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

Rgb diverging(const Style& s, double v) {
  if (v < 0) return lerp(s.zero, s.negative, v / s.diverging_min);
  return lerp(s.zero, s.positive, v / s.diverging_max);
}

Rgb sequential(const Style& s, double v) { return lerp(s.sequential_low, s.sequential_high, v); }

std::string num(double v) { return fmt(v, 2); }

Svg::Svg(double width, double height) : w_(width), h_(height) {}

void Svg::defs_hatch(std::string_view id, const Rgb& line) {
  defs_ += "<pattern id=\"" + std::string(id) +
           "\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\" patternTransform=\"rotate(45)\">"
           "<rect width=\"6\" height=\"6\" fill=\"#ffffff\"/><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"" +
           line.hex() + "\" stroke-width=\"2\"/></pattern>";
}

void Svg::rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"" + std::string(fill) + "\"";
  if (!extra.empty()) body_ += " " + std::string(extra);
  body_ += "/>\n";
}

void Svg::line(double x1, double y1, double x2, double y2, const Rgb& stroke, double width, std::string_view extra) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" stroke=\"" + stroke.hex() + "\" stroke-width=\"" + num(width) + "\"";
  if (!extra.empty()) body_ += " " + std::string(extra);
  body_ += "/>\n";
}

void Svg::circle(double cx, double cy, double r, const Rgb& fill, double opacity) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" + fill.hex() + "\"";
  if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

namespace {

std::string points(const std::vector<std::pair<double, double>>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += num(pts[i].first) + "," + num(pts[i].second);
  }
  return s;
}

}  // namespace

void Svg::polyline(const std::vector<std::pair<double, double>>& pts, const Rgb& stroke, double width, double opacity) {
  body_ += "<polyline points=\"" + points(pts) + "\" fill=\"none\" stroke=\"" + stroke.hex() + "\" stroke-width=\"" +
           num(width) + "\"";
  if (opacity < 1.0) body_ += " stroke-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

void Svg::polygon(const std::vector<std::pair<double, double>>& pts, const Rgb& fill, double opacity) {
  body_ += "<polygon points=\"" + points(pts) + "\" fill=\"" + fill.hex() + "\" fill-opacity=\"" + num(opacity) +
           "\" stroke=\"none\"/>\n";
}

void Svg::text(double x, double y, std::string_view s, double size, std::string_view anchor, std::string_view extra) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) + "\" text-anchor=\"" +
           std::string(anchor) + "\"";
  if (!extra.empty()) body_ += " " + std::string(extra);
  body_ += ">" + xml_escape(s) + "</text>\n";
}

std::string Svg::str() const {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w_) + "\" height=\"" + num(h_) +
                    "\" viewBox=\"0 0 " + num(w_) + " " + num(h_) + "\" font-family=\"sans-serif\">\n";
  if (!defs_.empty()) out += "<defs>" + defs_ + "</defs>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

}  // namespace probe::report
