#include "probe/gateway/record.hpp"

#include "probe/core/errors.hpp"

namespace probe {

std::string_view to_string(Condition c) { return c == Condition::real ? "real" : "control"; }

std::optional<Condition> parse_condition(std::string_view text) {
  if (text == "real") return Condition::real;
  if (text == "control") return Condition::control;
  return std::nullopt;
}

json to_json(const PredictionRecord& r) {
  return {{"run_id", r.run_id},
          {"model", r.model},
          {"language", to_string(r.language)},
          {"sentence_id", r.sentence_id},
          {"variant", to_string(r.variant)},
          {"entity_id", r.entity_id},
          {"condition", to_string(r.condition)},
          {"label", to_string(r.label)},
          {"raw_text", r.raw_text},
          {"cached", r.cached},
          {"latency_ms", r.latency_ms}};
}

PredictionRecord record_from_json(const json& j) {
  try {
    PredictionRecord r;
    r.run_id = j.at("run_id").get<std::string>();
    r.model = j.at("model").get<std::string>();
    auto lang = parse_language(j.at("language").get<std::string>());
    auto variant = parse_variant(j.at("variant").get<std::string>());
    auto cond = parse_condition(j.at("condition").get<std::string>());
    auto label = parse_label(j.at("label").get<std::string>());
    if (!lang || !variant || !cond || !label) fail(ErrorCode::ParseError, "record has an unknown enum value: " + j.dump());
    r.language = *lang;
    r.variant = *variant;
    r.condition = *cond;
    r.label = *label;
    r.sentence_id = j.at("sentence_id").get<std::string>();
    r.entity_id = j.at("entity_id").get<std::string>();
    r.raw_text = j.value("raw_text", std::string{});
    r.cached = j.value("cached", false);
    r.latency_ms = j.value("latency_ms", 0LL);
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed prediction record: ") + e.what());
  }
}

std::vector<PredictionRecord> load_records(const std::filesystem::path& path) {
  const auto rows = read_jsonl(path);
  if (!rows.errors.empty()) fail(ErrorCode::ParseError, rows.errors.front());
  std::vector<PredictionRecord> out;
  out.reserve(rows.lines.size());
  for (const auto& line : rows.lines) out.push_back(record_from_json(line.value));
  return out;
}

void save_records(const std::filesystem::path& path, const std::vector<PredictionRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace probe
