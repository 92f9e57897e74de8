#pragma once

#include "probe/corpus/corpus.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace probe {

// Placeholder workflow around external translation: the placeholder is
// swapped for an unambiguously gendered pivot name before translation and the
// (possibly transliterated) pivot is swapped back afterwards.

inline constexpr std::string_view kMalePivot = "John";
inline constexpr std::string_view kFemalePivot = "Mary";

std::string pre_translation_insert(std::string_view variant_text, Gender gender);

// Surface forms the pivot name may take per language and gender.
struct PivotTable {
  std::map<Language, std::map<Gender, std::vector<std::string>>> forms;

  static PivotTable defaults();
  const std::vector<std::string>& lookup(Language lang, Gender g) const;
};

PivotTable pivot_table_from_json(const json& j);
PivotTable load_pivot_table(const std::filesystem::path& path);
json to_json(const PivotTable& table);

// Throws PivotNotFound (0 hits) or PivotAmbiguous (2+ hits).
std::string post_translation_restore(std::string_view translated_text, Gender gender, Language lang,
                                     const PivotTable& pivots);

struct RestoreOutcome {
  Corpus restored;                        // templates whose both variants restored cleanly
  std::vector<Diagnostic> manual_review;  // one per failed variant
};

// Rows of `translated` carry pivot names in male_text/female_text.
RestoreOutcome restore_corpus(const Corpus& translated, const PivotTable& pivots);

}  // namespace probe
