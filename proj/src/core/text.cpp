#include "probe/core/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace probe::text {
namespace {

icu::UnicodeString to_unicode(std::string_view utf8) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

bool is_word_char(UChar32 c) { return u_isalpha(c) || u_isdigit(c) || u_hasBinaryProperty(c, UCHAR_DIACRITIC); }

// Code point ending right before byte offset pos (or -1 at the start).
UChar32 char_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return -1;
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_PREV(reinterpret_cast<const uint8_t*>(s.data()), 0, i, c);
  return c;
}

UChar32 char_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return -1;
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i, static_cast<int32_t>(s.size()), c);
  return c;
}

}  // namespace

std::string case_fold(std::string_view utf8) {
  icu::UnicodeString s = to_unicode(utf8);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  return to_utf8(s);
}

std::string collapse_whitespace(std::string_view utf8) {
  const icu::UnicodeString s = to_unicode(utf8);
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = out.length() > 0;
      continue;
    }
    if (pending_space) out.append(static_cast<UChar>(' '));
    pending_space = false;
    out.append(c);
  }
  return to_utf8(out);
}

std::string normalize_name(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString s = to_unicode(utf8);
  if (U_SUCCESS(status)) {
    icu::UnicodeString normalized = nfc->normalize(s, status);
    if (U_SUCCESS(status)) s = normalized;
  }
  s.foldCase(U_FOLD_CASE_DEFAULT);
  return collapse_whitespace(to_utf8(s));
}

std::string strip_punctuation(std::string_view utf8) {
  const icu::UnicodeString s = to_unicode(utf8);
  icu::UnicodeString out;
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    const int8_t type = u_charType(c);
    const bool symbol = type == U_MATH_SYMBOL || type == U_CURRENCY_SYMBOL ||
                        type == U_MODIFIER_SYMBOL || type == U_OTHER_SYMBOL;
    if (u_ispunct(c) || symbol) {
      out.append(static_cast<UChar>(' '));
    } else {
      out.append(c);
    }
  }
  return to_utf8(out);
}

std::vector<std::size_t> find_all(std::string_view haystack, std::string_view needle,
                                  bool word_boundary) {
  std::vector<std::size_t> hits;
  if (needle.empty()) return hits;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    bool ok = true;
    if (word_boundary) {
      const UChar32 before = char_before(haystack, pos);
      const UChar32 after = char_at(haystack, pos + needle.size());
      ok = !(before >= 0 && is_word_char(before)) && !(after >= 0 && is_word_char(after));
    }
    if (ok) {
      hits.push_back(pos);
      pos = haystack.find(needle, pos + needle.size());
    } else {
      pos = haystack.find(needle, pos + 1);
    }
  }
  return hits;
}

std::vector<std::size_t> find_word_prefix(std::string_view haystack, std::string_view needle) {
  std::vector<std::size_t> hits;
  if (needle.empty()) return hits;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    const UChar32 before = char_before(haystack, pos);
    if (!(before >= 0 && is_word_char(before))) {
      hits.push_back(pos);
      pos = haystack.find(needle, pos + needle.size());
    } else {
      pos = haystack.find(needle, pos + 1);
    }
  }
  return hits;
}

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  return find_all(haystack, needle, false).size();
}

std::string replace_first(std::string_view text, std::string_view needle,
                          std::string_view replacement) {
  const std::size_t pos = text.find(needle);
  if (pos == std::string_view::npos) return std::string(text);
  std::string out;
  out.reserve(text.size() + replacement.size());
  out.append(text.substr(0, pos));
  out.append(replacement);
  out.append(text.substr(pos + needle.size()));
  return out;
}

bool is_valid_utf8(std::string_view bytes) {
  const auto* p = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto n = static_cast<int32_t>(bytes.size());
  for (int32_t i = 0; i < n;) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) return false;
  }
  return true;
}

}  // namespace probe::text
