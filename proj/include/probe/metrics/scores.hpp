#pragma once

#include "probe/corpus/corpus.hpp"
#include "probe/gateway/record.hpp"

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace probe {

using LabelCounts = std::array<std::size_t, 3>;  // negative, neutral, positive

// negative -1, neutral 0, positive +1; InvalidLabel for Label::invalid.
int label_to_score(Label l);

// Base-2 Shannon entropy of the empirical distribution. EmptySet when all
// counts are zero.
double entropy(const LabelCounts& counts);
double entropy(std::span<const Label> labels);

// Labels observed for one sentence, pooled over entities and variants.
struct PredictionSet {
  std::string sentence_id;
  LabelCounts counts{};
  std::size_t total = 0;  // records, including invalid ones

  std::size_t valid() const { return counts[0] + counts[1] + counts[2]; }
  double coverage() const { return total ? static_cast<double>(valid()) / static_cast<double>(total) : 0.0; }
};

// One set per sentence, ordered by sentence id.
std::vector<PredictionSet> prediction_sets(std::span<const PredictionRecord> records);

struct InconsistencyReport {
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  double ic = 0.0;
  std::map<std::string, double> per_sentence_entropy;  // covered sentences only
  double invalid_rate = 0.0;
  std::size_t sentences = 0;
  std::size_t covered = 0;

  json to_json() const;
};

// Records must share model, language and condition (InvalidArgument
// otherwise). NoValidRecords when no sentence has a valid label.
InconsistencyReport inconsistency(std::span<const PredictionRecord> records);

struct ClassificationScores {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::array<double, 3> per_class_f1{};
  double invalid_rate = 0.0;
  std::size_t n = 0;
  // gold x predicted, predicted column 3 = invalid
  std::array<std::array<std::size_t, 4>, 3> confusion{};

  json to_json() const;
};

// Invalid predictions count as errors and as false negatives of the gold
// class. A class with no gold support and no predictions is left out of the
// macro mean.
ClassificationScores classification_scores(const std::array<std::array<std::size_t, 4>, 3>& confusion);
ClassificationScores accuracy_and_macro_f1(std::span<const PredictionRecord> records, const Corpus& corpus);

// Mean score per entity over its valid records; entities with none are absent.
std::map<std::string, double> entity_means(std::span<const PredictionRecord> records);

}  // namespace probe
