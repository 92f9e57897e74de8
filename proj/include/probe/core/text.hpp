#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace probe::text {

// Unicode-aware helpers over UTF-8 strings (ICU-backed).

std::string case_fold(std::string_view utf8);

// Trims and collapses every run of Unicode whitespace to a single ASCII space.
std::string collapse_whitespace(std::string_view utf8);

// NFC + case fold + whitespace collapse. Two names are "the same" iff their
// normalized forms are byte-equal.
std::string normalize_name(std::string_view utf8);

// Replaces punctuation, quote and symbol code points by spaces.
std::string strip_punctuation(std::string_view utf8);

// Byte offsets of every non-overlapping occurrence of needle in haystack.
// With word_boundary set, a match must not be preceded or followed by a
// letter or digit code point.
std::vector<std::size_t> find_all(std::string_view haystack, std::string_view needle,
                                  bool word_boundary);

// Like find_all but only the leading edge is checked, so a needle acts as a
// word prefix ("negativ" matches "negatively" but not "unnegative").
std::vector<std::size_t> find_word_prefix(std::string_view haystack, std::string_view needle);

std::size_t count_occurrences(std::string_view haystack, std::string_view needle);

std::string replace_first(std::string_view text, std::string_view needle,
                          std::string_view replacement);

bool is_valid_utf8(std::string_view bytes);

}  // namespace probe::text
