#pragma once

#include "probe/catalog/entity.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>

namespace probe {

struct CompassCell {
  std::optional<double> mean;  // empty when no entity falls in the cell
  std::size_t n = 0;
};

using CompassLayer = std::array<std::array<CompassCell, 10>, 10>;  // [econ][social]

struct CompassGrid {
  CompassLayer raw{};
  CompassLayer smoothed{};
  std::size_t placed = 0;
  std::size_t skipped = 0;  // entities without compass data or without a mean

  json to_json() const;
};

struct CompassOptions {
  // Also give empty cells the mean of their non-empty neighbours.
  bool spread_into_empty = false;
};

// Cell index floor(score) clamped to 0..9 on each axis; raw mean per cell;
// smoothed cell = mean of the non-empty raw cells in its 3x3 neighbourhood.
CompassGrid compass_grid(std::span<const PoliticalEntity> panel, const std::map<std::string, double>& entity_means,
                         const CompassOptions& opt = {});

int compass_index(double score);

}  // namespace probe
