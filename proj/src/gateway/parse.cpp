#include "probe/gateway/parse.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/text.hpp"

#include <limits>

namespace probe {

namespace {

LexiconEntry entry(std::vector<std::string> neg, std::vector<std::string> neu, std::vector<std::string> pos) {
  return LexiconEntry{{std::move(neg), std::move(neu), std::move(pos)}};
}

std::string prepare(std::string_view s) {
  return text::collapse_whitespace(text::strip_punctuation(text::normalize_name(s)));
}

}  // namespace

const Lexicon& default_lexicon() {
  static const Lexicon lex = {
      {Language::eng, entry({"negative"}, {"neutral"}, {"positive"})},
      {Language::fra, entry({"négati", "negati"}, {"neutre", "neutra"}, {"positi"})},
      {Language::spa, entry({"negativ"}, {"neutr"}, {"positiv"})},
      {Language::rus, entry({"отрицательн", "негативн"}, {"нейтральн"}, {"положительн", "позитивн"})},
      {Language::ara, entry({"سلبي"}, {"محايد", "حيادي"}, {"إيجابي", "ايجابي"})},
      {Language::zho, entry({"消极", "负面"}, {"中性", "中立"}, {"积极", "正面"})},
  };
  return lex;
}

Lexicon lexicon_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "lexicon must be a JSON object keyed by language");
  Lexicon lex;
  for (const auto& [code, classes] : j.items()) {
    auto lang = parse_language(code);
    if (!lang) fail(ErrorCode::ParseError, "lexicon: unknown language " + code);
    LexiconEntry e;
    for (Label l : kSentimentClasses) {
      const auto key = std::string(to_string(l));
      if (!classes.contains(key)) continue;
      try {
        e.forms[class_index(l)] = classes.at(key).get<std::vector<std::string>>();
      } catch (const json::exception& ex) {
        fail(ErrorCode::ParseError, "lexicon " + code + "." + key + ": " + ex.what());
      }
    }
    lex[*lang] = std::move(e);
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  try {
    return lexicon_from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

json to_json(const Lexicon& lex) {
  json j = json::object();
  for (const auto& [lang, e] : lex) {
    json c = json::object();
    for (Label l : kSentimentClasses) c[std::string(to_string(l))] = e.forms[class_index(l)];
    j[std::string(to_string(lang))] = c;
  }
  return j;
}

Label parse_sentiment(std::string_view raw_text, Language lang, const Lexicon& lexicon) {
  const auto it = lexicon.find(lang);
  if (it == lexicon.end()) return Label::invalid;
  const std::string hay = prepare(raw_text);
  const bool words = uses_word_boundaries(lang);

  Label best = Label::invalid;
  std::size_t best_pos = std::numeric_limits<std::size_t>::max();
  for (Label l : kSentimentClasses) {
    for (const auto& form : it->second.forms[class_index(l)]) {
      const std::string needle = prepare(form);
      if (needle.empty()) continue;
      const auto hits = words ? text::find_word_prefix(hay, needle) : text::find_all(hay, needle, false);
      if (!hits.empty() && hits.front() < best_pos) {
        best_pos = hits.front();
        best = l;
      }
    }
  }
  return best;
}

}  // namespace probe
