#pragma once

#include "probe/gateway/record.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace probe {

// Sentences x models sentiment scores for one entity; row-major.
struct EntitySentimentMatrix {
  std::string entity_id;
  std::vector<std::string> rows;  // sentence ids
  std::vector<std::string> cols;  // model ids
  std::vector<std::optional<double>> cells;

  std::optional<double>& at(std::size_t r, std::size_t c) { return cells[r * cols.size() + c]; }
  const std::optional<double>& at(std::size_t r, std::size_t c) const { return cells[r * cols.size() + c]; }
};

// Scores from the entity's records; cells without a valid record stay empty.
// Variants of a sentence, if both present, are averaged.
EntitySentimentMatrix build_entity_matrix(std::span<const PredictionRecord> records, const std::string& entity_id,
                                          const std::vector<std::string>& sentence_ids,
                                          const std::vector<std::string>& model_ids);

// Mean over columns of the cosine between matching columns, using rows
// present in both. Columns where either side has zero norm are skipped;
// AllZeroColumns when none remain, ShapeMismatch for different index sets.
double entity_similarity(const EntitySentimentMatrix& a, const EntitySentimentMatrix& b);

struct SimilarityMatrix {
  std::vector<std::string> entity_ids;
  std::vector<double> values;  // n x n, row-major
  double scale = 1.0;

  double at(std::size_t i, std::size_t j) const { return values[i * entity_ids.size() + j]; }
};

// Pairwise entity_similarity over the listed entities (at least two); the
// diagonal is 1. scale100 multiplies every value by 100.
SimilarityMatrix similarity_matrix(const std::vector<std::string>& entity_ids, std::span<const PredictionRecord> records,
                                   bool scale100 = false);

}  // namespace probe
