#include "probe/core/labels.hpp"

namespace probe {

std::string_view to_string(Label l) {
  switch (l) {
    case Label::negative: return "negative";
    case Label::neutral: return "neutral";
    case Label::positive: return "positive";
    case Label::invalid: return "invalid";
  }
  return "invalid";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "negative") return Label::negative;
  if (text == "neutral") return Label::neutral;
  if (text == "positive") return Label::positive;
  if (text == "invalid") return Label::invalid;
  return std::nullopt;
}

std::string_view to_string(Language l) {
  switch (l) {
    case Language::eng: return "eng";
    case Language::fra: return "fra";
    case Language::spa: return "spa";
    case Language::rus: return "rus";
    case Language::ara: return "ara";
    case Language::zho: return "zho";
  }
  return "eng";
}

std::optional<Language> parse_language(std::string_view code) {
  for (Language l : kAllLanguages) {
    if (to_string(l) == code) return l;
  }
  return std::nullopt;
}

bool uses_word_boundaries(Language l) { return l != Language::ara && l != Language::zho; }

}  // namespace probe
