#pragma once

#include "probe/corpus/corpus.hpp"
#include "probe/gateway/record.hpp"
#include "probe/metrics/profile.hpp"
#include "probe/metrics/scores.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>

namespace probe {

struct RunSummary {
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  std::size_t sentences = 0;
  std::size_t records = 0;
  InconsistencyReport ic;
  ClassificationScores scores;
  AlignmentProfile profile;

  json to_json() const;
};

RunSummary summarize_run(std::span<const PredictionRecord> records, const Corpus& corpus,
                         std::span<const PoliticalEntity> panel, const BootstrapOptions& boot);

// Every delta is control minus real: a negative d_ic means replacing names
// with control names reduced inconsistency.
struct MitigationDelta {
  std::string model;
  Language language = Language::eng;
  double d_ic = 0.0;
  double d_accuracy = 0.0;
  double d_macro_f1 = 0.0;
  double d_invalid_rate = 0.0;
  std::array<std::optional<double>, 8> d_centered{};  // empty unless present in both

  json to_json() const;
};

// ShapeMismatch unless both summaries cover the same model, language, and
// sentence and record counts.
MitigationDelta compare_runs(const RunSummary& real, const RunSummary& control);

}  // namespace probe
