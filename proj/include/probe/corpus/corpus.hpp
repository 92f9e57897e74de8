#pragma once

#include "probe/catalog/entity.hpp"
#include "probe/core/labels.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace probe {

inline constexpr std::string_view kTargetPlaceholder = "{{TARGET}}";

enum class Variant { male, female };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);
inline Variant variant_for(Gender g) { return g == Gender::male ? Variant::male : Variant::female; }

struct SentenceTemplate {
  std::string id;
  Language language = Language::eng;
  Label gold_label = Label::neutral;
  std::string male_text;
  std::string female_text;
  bool reviewed = false;
  json extra = json::object();

  const std::string& text(Variant v) const { return v == Variant::male ? male_text : female_text; }
};

struct Corpus {
  std::vector<SentenceTemplate> templates;
  bool balanced = false;

  std::set<Language> languages() const;
  // Templates of one language, in file order.
  std::vector<const SentenceTemplate*> slice(Language lang) const;
  const SentenceTemplate* find(std::string_view id, Language lang) const;
};

json to_json(const SentenceTemplate& t);
SentenceTemplate template_from_json(const json& j);

struct CorpusLoad {
  Corpus corpus;
  std::vector<Diagnostic> diagnostics;
};

CorpusLoad load_corpus(const std::filesystem::path& path);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

// Mechanical checks only: placeholder exactly once per variant, known gold
// label, unique (id, language), cross-language label agreement, and optional
// per-language class balance.
std::vector<Diagnostic> validate_corpus(const Corpus& corpus, bool require_balanced);

struct CorpusStats {
  Language language;
  std::size_t templates = 0;
  std::array<std::size_t, 3> per_class{};  // negative, neutral, positive
  std::size_t reviewed = 0;
};

std::vector<CorpusStats> corpus_stats(const Corpus& corpus);

// Chooses the variant matching the entity's gender and substitutes the
// placeholder with name_override (control runs) or the entity's name.
std::string instantiate(const SentenceTemplate& t, const PoliticalEntity& entity,
                        const std::optional<std::string>& name_override = std::nullopt);

// Name to present for an entity in a run; throws MissingControlName for a
// control run on an entity without one.
const std::string& presented_name(const PoliticalEntity& entity, bool control);

}  // namespace probe
