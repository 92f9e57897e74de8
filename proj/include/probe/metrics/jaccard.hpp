#pragma once

#include "probe/gateway/record.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace probe {

struct JaccardResult {
  double mean = 0.0;
  std::map<std::string, double> per_entity;
};

// Per entity, A and B are the (sentence, variant, label) sets of the two runs
// restricted to coordinates with a valid label in both; the result averages
// |A n B| / |A u B| over entities with at least one such coordinate.
// NoOverlap when no entity has one.
JaccardResult cross_language_jaccard(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b);

struct JaccardTable {
  std::vector<std::string> keys;  // e.g. language codes
  std::vector<double> values;     // keys x keys, row-major; 1 on the diagonal

  double at(std::size_t i, std::size_t j) const { return values[i * keys.size() + j]; }
};

// Pairwise agreement between the runs of one model, keyed by language.
JaccardTable jaccard_table(const std::map<std::string, std::vector<PredictionRecord>>& runs);

}  // namespace probe
