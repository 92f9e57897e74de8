#pragma once

#include "probe/catalog/entity.hpp"
#include "probe/corpus/corpus.hpp"
#include "probe/gateway/record.hpp"
#include "probe/prompt/prompt.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace probe {

struct PlanItem {
  std::uint32_t sentence = 0;  // index into RunPlan::sentences
  std::uint32_t entity = 0;    // index into RunPlan::entities
  Variant variant = Variant::male;
};

// Full sentence x entity cross product for one (model, language, condition)
// cell. Items are ordered sentence-major, entity-minor, both by ascending id.
struct RunPlan {
  std::string run_id;
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  std::vector<SentenceTemplate> sentences;
  std::vector<PoliticalEntity> entities;
  PromptSpec prompt;
  std::vector<PlanItem> items;

  std::size_t size() const { return items.size(); }

  const SentenceTemplate& sentence_of(const PlanItem& it) const { return sentences[it.sentence]; }
  const PoliticalEntity& entity_of(const PlanItem& it) const { return entities[it.entity]; }
  const std::string& name_of(const PlanItem& it) const;
  std::string sentence_text(const PlanItem& it) const;
  ChatMessages messages(const PlanItem& it) const;
};

// Throws MissingControlName (naming every offender) for a control plan over
// entities without control names, InvalidArgument for an empty panel or a
// template in another language.
RunPlan enumerate_plan(const std::vector<SentenceTemplate>& corpus_slice, const std::vector<PoliticalEntity>& panel,
                       const PromptSpec& spec, Condition condition, std::string run_id, std::string model);

// Conventional run id for a matrix cell.
std::string cell_run_id(std::string_view base, std::string_view model, Language lang, Condition cond);

// On-disk description of a plan; paths are relative to the plan file.
struct PlanFile {
  std::string run_id;
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  std::filesystem::path entities;
  std::filesystem::path sentences;
  std::optional<std::filesystem::path> prompt_library;
  int shots = 9;
  std::uint64_t seed = 0;
  std::vector<std::string> sentence_ids;  // empty = every sentence of the language

  static PlanFile load(const std::filesystem::path& path);
  json to_json() const;
};

RunPlan materialize(const PlanFile& file);

}  // namespace probe
