#pragma once

#include "probe/core/jsonl.hpp"
#include "probe/core/labels.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace probe {

// Surface forms per class (negative, neutral, positive). In languages with
// word boundaries a form matches at the start of a word, so stems such as
// "positiv" cover inflections; elsewhere any substring matches.
struct LexiconEntry {
  std::array<std::vector<std::string>, 3> forms;
};

using Lexicon = std::map<Language, LexiconEntry>;

const Lexicon& default_lexicon();
Lexicon lexicon_from_json(const json& j);
Lexicon load_lexicon(const std::filesystem::path& path);
json to_json(const Lexicon& lex);

// Case-folds and strips punctuation, then picks the single matching class or,
// when several match, the one whose first match starts earliest. No match
// gives Label::invalid.
Label parse_sentiment(std::string_view raw_text, Language lang, const Lexicon& lexicon = default_lexicon());

}  // namespace probe
