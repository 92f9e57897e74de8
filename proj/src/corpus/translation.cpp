#include "probe/corpus/translation.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/text.hpp"

#include <algorithm>

namespace probe {

std::string pre_translation_insert(std::string_view variant_text, Gender gender) {
  return text::replace_first(variant_text, kTargetPlaceholder, gender == Gender::male ? kMalePivot : kFemalePivot);
}

PivotTable PivotTable::defaults() {
  PivotTable t;
  t.forms[Language::eng] = {{Gender::male, {"John"}}, {Gender::female, {"Mary"}}};
  t.forms[Language::fra] = {{Gender::male, {"John", "Jean"}}, {Gender::female, {"Mary", "Marie"}}};
  t.forms[Language::spa] = {{Gender::male, {"John", "Juan"}}, {Gender::female, {"Mary", "María"}}};
  t.forms[Language::rus] = {{Gender::male, {"Джон"}}, {Gender::female, {"Мэри"}}};
  t.forms[Language::ara] = {{Gender::male, {"جون"}}, {Gender::female, {"ماري"}}};
  t.forms[Language::zho] = {{Gender::male, {"约翰"}}, {Gender::female, {"玛丽"}}};
  return t;
}

const std::vector<std::string>& PivotTable::lookup(Language lang, Gender g) const {
  static const std::vector<std::string> kEmpty;
  auto it = forms.find(lang);
  if (it == forms.end()) return kEmpty;
  auto jt = it->second.find(g);
  return jt == it->second.end() ? kEmpty : jt->second;
}

PivotTable pivot_table_from_json(const json& j) {
  // {"spa": {"male": ["Juan"], "female": "María"}, ...}; a bare string is a
  // one-element list.
  if (!j.is_object()) fail(ErrorCode::ParseError, "pivot table must be a JSON object");
  PivotTable t;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto lang = parse_language(it.key());
    if (!lang) fail(ErrorCode::ParseError, "unknown language '" + it.key() + "' in pivot table");
    for (auto gt = it.value().begin(); gt != it.value().end(); ++gt) {
      auto g = parse_gender(gt.key());
      if (!g) fail(ErrorCode::ParseError, "unknown gender '" + gt.key() + "' in pivot table");
      auto& dest = t.forms[*lang][*g];
      if (gt.value().is_string()) {
        dest.push_back(gt.value().get<std::string>());
      } else if (gt.value().is_array()) {
        for (const auto& f : gt.value()) dest.push_back(f.get<std::string>());
      } else {
        fail(ErrorCode::ParseError, "pivot forms must be a string or list of strings");
      }
    }
  }
  return t;
}

PivotTable load_pivot_table(const std::filesystem::path& path) { return pivot_table_from_json(json::parse(read_file(path))); }

json to_json(const PivotTable& table) {
  json j = json::object();
  for (const auto& [lang, by_gender] : table.forms) {
    for (const auto& [g, forms] : by_gender) j[std::string(to_string(lang))][std::string(to_string(g))] = forms;
  }
  return j;
}

std::string post_translation_restore(std::string_view translated_text, Gender gender, Language lang,
                                     const PivotTable& pivots) {
  const auto& forms = pivots.lookup(lang, gender);
  const bool boundaries = uses_word_boundaries(lang);
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // (offset, length)
  for (const auto& form : forms) {
    for (std::size_t pos : text::find_all(translated_text, form, boundaries)) spans.emplace_back(pos, form.size());
  }
  std::sort(spans.begin(), spans.end());
  // Overlapping hits of different forms ("Mar" / "Mary") are one occurrence;
  // the widest span wins.
  std::vector<std::pair<std::size_t, std::size_t>> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.first < merged.back().first + merged.back().second) {
      auto& m = merged.back();
      const std::size_t end = std::max(m.first + m.second, s.first + s.second);
      m.second = end - m.first;
    } else {
      merged.push_back(s);
    }
  }
  const std::size_t hits = merged.size();
  if (hits == 0) fail(ErrorCode::PivotNotFound, "pivot name not found");
  if (hits > 1) fail(ErrorCode::PivotAmbiguous, "pivot name occurs " + std::to_string(hits) + " times");
  const auto [at, len] = merged.front();
  std::string out(translated_text.substr(0, at));
  out += kTargetPlaceholder;
  out += translated_text.substr(at + len);
  return out;
}

RestoreOutcome restore_corpus(const Corpus& translated, const PivotTable& pivots) {
  RestoreOutcome out;
  out.restored.balanced = translated.balanced;
  for (const auto& t : translated.templates) {
    SentenceTemplate r = t;
    bool ok = true;
    for (Gender g : {Gender::male, Gender::female}) {
      std::string& field = g == Gender::male ? r.male_text : r.female_text;
      try {
        field = post_translation_restore(field, g, t.language, pivots);
      } catch (const Error& e) {
        ok = false;
        out.manual_review.push_back({std::string(to_string(e.code())), t.id,
                                     std::string(to_string(t.language)) + " " + std::string(to_string(g)) +
                                         " variant: " + e.what()});
      }
    }
    if (ok) {
      r.reviewed = false;
      out.restored.templates.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace probe
