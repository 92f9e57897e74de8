#include "probe/metrics/compass.hpp"

#include <algorithm>
#include <cmath>

namespace probe {

int compass_index(double score) {
  if (!(score >= 0.0)) return 0;
  return std::min(9, static_cast<int>(std::floor(score)));
}

namespace {

json layer_json(const CompassLayer& layer) {
  json rows = json::array();
  for (const auto& col : layer) {
    json r = json::array();
    for (const auto& c : col) r.push_back(c.mean ? json(*c.mean) : json(nullptr));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

json CompassGrid::to_json() const {
  json counts = json::array();
  for (const auto& col : raw) {
    json r = json::array();
    for (const auto& c : col) r.push_back(c.n);
    counts.push_back(r);
  }
  return {{"raw", layer_json(raw)}, {"smoothed", layer_json(smoothed)}, {"n", counts},
          {"placed", placed},       {"skipped", skipped}};
}

CompassGrid compass_grid(std::span<const PoliticalEntity> panel, const std::map<std::string, double>& entity_means,
                         const CompassOptions& opt) {
  CompassGrid g;
  std::array<std::array<double, 10>, 10> sum{};
  for (const auto& e : panel) {
    const auto m = entity_means.find(e.id);
    if (!e.compass || m == entity_means.end()) {
      ++g.skipped;
      continue;
    }
    const int x = compass_index(e.compass->econ);
    const int y = compass_index(e.compass->social);
    sum[x][y] += m->second;
    ++g.raw[x][y].n;
    ++g.placed;
  }
  for (int x = 0; x < 10; ++x) {
    for (int y = 0; y < 10; ++y) {
      if (g.raw[x][y].n) g.raw[x][y].mean = sum[x][y] / static_cast<double>(g.raw[x][y].n);
    }
  }
  for (int x = 0; x < 10; ++x) {
    for (int y = 0; y < 10; ++y) {
      if (!g.raw[x][y].mean && !opt.spread_into_empty) continue;
      double s = 0.0;
      std::size_t k = 0;
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          const int u = x + dx, v = y + dy;
          if (u < 0 || u > 9 || v < 0 || v > 9 || !g.raw[u][v].mean) continue;
          s += *g.raw[u][v].mean;
          ++k;
        }
      }
      if (k) {
        g.smoothed[x][y].mean = s / static_cast<double>(k);
        g.smoothed[x][y].n = g.raw[x][y].n;
      }
    }
  }
  return g;
}

}  // namespace probe
