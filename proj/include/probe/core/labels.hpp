#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace probe {

// Three sentiment classes plus the parse-failure marker. Gold labels never
// carry `invalid`.
enum class Label { negative, neutral, positive, invalid };

inline constexpr std::array<Label, 3> kSentimentClasses = {Label::negative, Label::neutral, Label::positive};

std::string_view to_string(Label l);
std::optional<Label> parse_label(std::string_view text);

inline constexpr bool is_valid(Label l) { return l != Label::invalid; }
inline constexpr std::size_t class_index(Label l) { return static_cast<std::size_t>(l); }

enum class Language { eng, fra, spa, rus, ara, zho };

inline constexpr std::array<Language, 6> kAllLanguages = {Language::eng, Language::fra, Language::spa,
                                                         Language::rus, Language::ara, Language::zho};

std::string_view to_string(Language l);
std::optional<Language> parse_language(std::string_view code);

// Scripts written without spaces or with attached clitics (Chinese, Arabic)
// cannot rely on word boundaries for matching.
bool uses_word_boundaries(Language l);

}  // namespace probe
