#pragma once

#include "probe/catalog/entity.hpp"
#include "probe/gateway/record.hpp"
#include "probe/metrics/mann_whitney.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace probe {

// p[i][j]: one-sided p that alignment i's entity means exceed alignment j's.
// Diagonal and unpopulated rows/columns are empty.
struct PValueTable {
  std::array<std::array<std::optional<double>, 8>, 8> p{};
  std::array<std::size_t, 8> n{};

  const std::optional<double>& at(Alignment row, Alignment col) const { return p[index_of(row)][index_of(col)]; }
  json to_json() const;
};

PValueTable pairwise_tests_from_groups(const std::array<std::vector<double>, 8>& groups,
                                       MwMethod method = MwMethod::automatic);

// InvalidArgument when fewer than two alignments have entities.
PValueTable pairwise_alignment_tests(std::span<const PredictionRecord> records, std::span<const PoliticalEntity> panel,
                                     MwMethod method = MwMethod::automatic);

}  // namespace probe
