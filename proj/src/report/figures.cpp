#include "probe/report/figures.hpp"

#include "probe/report/format.hpp"

#include <algorithm>
#include <cmath>

namespace probe::report {

namespace {

constexpr double kLog2Of3 = 1.5849625007211562;

void axes(Svg& svg, double x0, double y0, double w, double h, const Rgb& c) {
  svg.line(x0, y0 + h, x0 + w, y0 + h, c);
  svg.line(x0, y0, x0, y0 + h, c);
}

}  // namespace

std::string render_scatter_accuracy_vs_ic(const std::vector<ScatterPair>& pairs, const Style& style) {
  const double W = 640, H = 480, L = 70, T = 40, PW = 520, PH = 380;
  Svg svg(W, H);
  const Rgb axis{0x33, 0x33, 0x33};
  const Rgb grid{0xe0, 0xe0, 0xe0};
  svg.text(W / 2, 24, "Accuracy vs. inconsistency", 14, "middle");
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    svg.line(L + fx * PW, T, L + fx * PW, T + PH, grid, 0.5);
    svg.text(L + fx * PW, T + PH + 16, fmt(fx * kLog2Of3, 2), 10, "middle");
    svg.line(L, T + PH - fx * PH, L + PW, T + PH - fx * PH, grid, 0.5);
    svg.text(L - 6, T + PH - fx * PH + 4, fmt(fx, 2), 10, "end");
  }
  axes(svg, L, T, PW, PH, axis);
  svg.text(L + PW / 2, H - 12, "inconsistency (bits)", 11, "middle");
  svg.text(18, T + PH / 2, "accuracy", 11, "middle", "transform=\"rotate(-90 18 " + num(T + PH / 2) + ")\"");

  auto px = [&](const ScatterPoint& p) {
    return std::pair{L + std::clamp(p.ic / kLog2Of3, 0.0, 1.0) * PW, T + PH - std::clamp(p.accuracy, 0.0, 1.0) * PH};
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pr = pairs[i];
    const Rgb c = style.palette[i % style.palette.size()];
    if (pr.real && pr.control) {
      const auto a = px(*pr.real);
      const auto b = px(*pr.control);
      svg.line(a.first, a.second, b.first, b.second, c, 1.0);
    }
    if (pr.real) {
      const auto a = px(*pr.real);
      svg.circle(a.first, a.second, 5, c);
    }
    if (pr.control) {
      const auto b = px(*pr.control);
      svg.circle(b.first, b.second, 5, c, style.control_opacity);
    }
    const double ly = T + 14 + 14.0 * static_cast<double>(i);
    svg.circle(L + PW - 130, ly - 4, 4, c);
    svg.text(L + PW - 120, ly, pr.label, 10);
  }
  return svg.str();
}

std::string render_alignment_curves(const std::vector<AlignmentProfile>& profiles, const std::string& title,
                                    const Style& style) {
  const double W = 640, H = 420, L = 70, T = 40, PW = 500, PH = 320;
  double extent = 0.1;
  for (const auto& p : profiles) {
    for (const auto& s : p.stats) {
      if (s.present) extent = std::max({extent, std::fabs(s.ci_low), std::fabs(s.ci_high), std::fabs(s.centered)});
    }
  }
  extent = std::ceil(extent * 20.0) / 20.0;
  Svg svg(W, H);
  const Rgb axis{0x33, 0x33, 0x33};
  const Rgb grid{0xe0, 0xe0, 0xe0};
  svg.text(W / 2, 24, title, 14, "middle");
  auto xpos = [&](std::size_t a) { return L + (static_cast<double>(a) + 0.5) * PW / 8.0; };
  auto ypos = [&](double v) { return T + PH / 2 - v / extent * (PH / 2); };
  for (int i = -2; i <= 2; ++i) {
    const double v = extent * i / 2.0;
    svg.line(L, ypos(v), L + PW, ypos(v), i == 0 ? axis : grid, i == 0 ? 1.0 : 0.5);
    svg.text(L - 6, ypos(v) + 4, fmt(v, 2), 10, "end");
  }
  axes(svg, L, T, PW, PH, axis);
  for (std::size_t a = 0; a < 8; ++a) svg.text(xpos(a), T + PH + 16, to_string(kAllAlignments[a]), 10, "middle");
  svg.text(18, T + PH / 2, "centered sentiment", 11, "middle", "transform=\"rotate(-90 18 " + num(T + PH / 2) + ")\"");

  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    const Rgb c = style.palette[i % style.palette.size()];
    std::vector<std::pair<double, double>> upper, lower, line;
    for (std::size_t a = 0; a < 8; ++a) {
      const auto& s = p.stats[a];
      if (!s.present) continue;
      upper.emplace_back(xpos(a), ypos(s.ci_high));
      lower.emplace_back(xpos(a), ypos(s.ci_low));
      line.emplace_back(xpos(a), ypos(s.centered));
    }
    std::vector<std::pair<double, double>> band = upper;
    band.insert(band.end(), lower.rbegin(), lower.rend());
    if (band.size() >= 3) svg.polygon(band, c, 0.2);
    svg.polyline(line, c);
    for (const auto& [x, y] : line) svg.circle(x, y, 3, c);
    const double ly = T + 14 + 14.0 * static_cast<double>(i);
    svg.circle(L + PW + 12, ly - 4, 4, c);
    svg.text(L + PW + 20, ly, p.group, 10);
  }
  return svg.str();
}

std::string render_heatmap(const Heatmap& h, const Style& style) {
  const double cell = 44, L = 90, T = 50;
  const double W = L + cell * static_cast<double>(h.col_labels.size()) + 20;
  const double H = T + cell * static_cast<double>(h.row_labels.size()) + 40;
  Svg svg(W, H);
  svg.defs_hatch("blank", style.blank);
  svg.text(W / 2, 24, h.title, 14, "middle");
  const std::size_t nc = h.col_labels.size();
  for (std::size_t j = 0; j < nc; ++j) {
    svg.text(L + (static_cast<double>(j) + 0.5) * cell, T - 8, h.col_labels[j], 10, "middle");
  }
  for (std::size_t i = 0; i < h.row_labels.size(); ++i) {
    const double y = T + static_cast<double>(i) * cell;
    svg.text(L - 6, y + cell / 2 + 4, h.row_labels[i], 10, "end");
    for (std::size_t j = 0; j < nc; ++j) {
      const double x = L + static_cast<double>(j) * cell;
      const auto& v = h.cells[i * nc + j];
      if (!v) {
        svg.rect(x, y, cell, cell, "url(#blank)", "stroke=\"#ffffff\"");
        continue;
      }
      Rgb fill;
      std::string label;
      switch (h.ramp) {
        case Ramp::diverging:
          fill = diverging(style, *v / h.color_scale);
          label = fmt(*v, h.decimals);
          break;
        case Ramp::sequential:
          fill = sequential(style, *v / h.color_scale);
          label = fmt(*v, h.decimals);
          break;
        case Ramp::pvalue:
          fill = *v < style.significance ? style.highlight : style.zero;
          label = fmt_p(*v);
          break;
      }
      svg.rect(x, y, cell, cell, fill.hex(), "stroke=\"#ffffff\"");
      svg.text(x + cell / 2, y + cell / 2 + 3, label, 8, "middle");
    }
  }
  return svg.str();
}

Heatmap similarity_heatmap(const SimilarityMatrix& m, const std::string& title) {
  Heatmap h{title, m.entity_ids, m.entity_ids, {}, Ramp::diverging, m.scale == 1.0 ? 4 : 2, m.scale};
  for (double v : m.values) h.cells.emplace_back(v);
  return h;
}

Heatmap jaccard_heatmap(const JaccardTable& t, const std::string& title) {
  Heatmap h{title, t.keys, t.keys, {}, Ramp::sequential, 4};
  for (double v : t.values) h.cells.emplace_back(v);
  return h;
}

Heatmap pvalue_heatmap(const PValueTable& t, const std::string& title) {
  Heatmap h{title, {}, {}, {}, Ramp::pvalue, 4};
  for (Alignment a : kAllAlignments) {
    h.row_labels.emplace_back(to_string(a));
    h.col_labels.emplace_back(to_string(a));
  }
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) h.cells.push_back(t.p[i][j]);
  }
  return h;
}

Heatmap compass_heatmap(const CompassGrid& g, bool smoothed, const std::string& title) {
  const CompassLayer& layer = smoothed ? g.smoothed : g.raw;
  Heatmap h{title, {}, {}, {}, Ramp::diverging, 4};
  for (int y = 9; y >= 0; --y) h.row_labels.push_back("social " + std::to_string(y));
  for (int x = 0; x < 10; ++x) h.col_labels.push_back(std::to_string(x));
  for (int y = 9; y >= 0; --y) {
    for (int x = 0; x < 10; ++x) h.cells.push_back(layer[x][y].mean);
  }
  return h;
}

}  // namespace probe::report
