#pragma once

#include "probe/core/jsonl.hpp"
#include "probe/core/labels.hpp"
#include "probe/corpus/corpus.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace probe {

enum class Condition { real, control };

std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view text);

// One classification outcome for one (run, model, language, sentence,
// variant, entity) coordinate. raw_text is kept verbatim even when parsing
// failed.
struct PredictionRecord {
  std::string run_id;
  std::string model;
  Language language = Language::eng;
  std::string sentence_id;
  Variant variant = Variant::male;
  std::string entity_id;
  Condition condition = Condition::real;
  Label label = Label::invalid;
  std::string raw_text;
  bool cached = false;
  long long latency_ms = 0;

  bool operator==(const PredictionRecord&) const = default;
};

json to_json(const PredictionRecord& r);
PredictionRecord record_from_json(const json& j);

std::vector<PredictionRecord> load_records(const std::filesystem::path& path);
void save_records(const std::filesystem::path& path, const std::vector<PredictionRecord>& records);

}  // namespace probe
