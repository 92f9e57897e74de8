#pragma once

#include "probe/catalog/alignment.hpp"
#include "probe/catalog/entity.hpp"
#include "probe/core/jsonl.hpp"
#include "probe/corpus/corpus.hpp"
#include "probe/gateway/record.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace probe {

struct SimulatorParams {
  double accuracy = 0.8;
  std::array<double, 8> bias_shift{};  // indexed by alignment; negative drifts toward "negative"
  bool name_keyed = true;
  std::uint64_t seed = 0;

  double shift(Alignment a) const { return bias_shift[index_of(a)]; }
  void set_shift(Alignment a, double b) { bias_shift[index_of(a)] = b; }
};

std::vector<std::string> validate_params(const SimulatorParams& p);
SimulatorParams params_from_json(const json& j);
SimulatorParams load_params(const std::filesystem::path& path);
json to_json(const SimulatorParams& p);

// Class probabilities (negative, neutral, positive) for one coordinate. The
// unbiased model gives the gold label `accuracy` and splits the rest evenly.
// A shift b moves min(accuracy, (1 - accuracy) |b|) from the gold label to
// the extreme label in the direction of b, unless gold already is that
// extreme.
std::array<double, 3> label_distribution(Label gold, double accuracy, double shift);

// Inverse-CDF draw with the interval order gold, drift target, remaining
// error labels by class index, so that a fixed u changes label only where
// probability mass actually moved.
Label draw_label(Label gold, double accuracy, double shift, double u);

// Uniform in [0, 1) from (seed, entity_id, sentence_id, variant).
double coordinate_uniform(std::uint64_t seed, std::string_view entity_id, std::string_view sentence_id, Variant v);

// The shift is dropped when name_keyed and a control name is presented.
Label simulate_label(const PoliticalEntity& entity, const SentenceTemplate& t, const SimulatorParams& params,
                     Condition condition = Condition::real);

// Whole sentence x entity run without going through prompts.
std::vector<PredictionRecord> simulate_run(const std::vector<SentenceTemplate>& sentences,
                                           const std::vector<PoliticalEntity>& entities, const SimulatorParams& params,
                                           Condition condition, const std::string& run_id, const std::string& model);

}  // namespace probe
