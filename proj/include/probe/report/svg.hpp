#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace probe::report {

struct Rgb {
  int r = 0, g = 0, b = 0;
  std::string hex() const;
};

// Fixed colour anchors; ramps never rescale to the data.
struct Style {
  Rgb negative{0xc0, 0x39, 0x2b};
  Rgb zero{0xf7, 0xf7, 0xf7};
  Rgb positive{0x1e, 0x84, 0x49};
  Rgb sequential_low{0xf7, 0xfc, 0xf5};
  Rgb sequential_high{0x00, 0x6d, 0x2c};
  Rgb highlight{0xff, 0xd7, 0x00};
  Rgb blank{0xdd, 0xdd, 0xdd};
  double diverging_min = -1.0;
  double diverging_max = 1.0;
  double control_opacity = 0.3;
  double significance = 0.01;
  std::vector<Rgb> palette{{0x1f, 0x77, 0xb4}, {0xff, 0x7f, 0x0e}, {0x2c, 0xa0, 0x2c}, {0xd6, 0x27, 0x28},
                           {0x94, 0x67, 0xbd}, {0x8c, 0x56, 0x4b}, {0xe3, 0x77, 0xc2}, {0x7f, 0x7f, 0x7f}};
};

const Style& default_style();

Rgb lerp(const Rgb& a, const Rgb& b, double t);
// Red through neutral to green, 0 at the neutral anchor.
Rgb diverging(const Style& s, double v);
// Light to dark green over [0, 1].
Rgb sequential(const Style& s, double v);

// Minimal SVG builder; numbers are written with fixed precision so output is
// identical across platforms.
class Svg {
 public:
  Svg(double width, double height);

  void defs_hatch(std::string_view id, const Rgb& line);
  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra = {});
  void line(double x1, double y1, double x2, double y2, const Rgb& stroke, double width = 1.0,
            std::string_view extra = {});
  void circle(double cx, double cy, double r, const Rgb& fill, double opacity = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& pts, const Rgb& stroke, double width = 1.5,
                double opacity = 1.0);
  void polygon(const std::vector<std::pair<double, double>>& pts, const Rgb& fill, double opacity);
  void text(double x, double y, std::string_view s, double size = 11.0, std::string_view anchor = "start",
            std::string_view extra = {});
  std::string str() const;

 private:
  double w_, h_;
  std::string defs_;
  std::string body_;
};

std::string num(double v);

}  // namespace probe::report
