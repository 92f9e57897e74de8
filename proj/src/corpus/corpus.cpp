#include "probe/corpus/corpus.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/text.hpp"

#include <map>

namespace probe {

std::string_view to_string(Variant v) { return v == Variant::male ? "male" : "female"; }

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "male") return Variant::male;
  if (text == "female") return Variant::female;
  return std::nullopt;
}

std::set<Language> Corpus::languages() const {
  std::set<Language> out;
  for (const auto& t : templates) out.insert(t.language);
  return out;
}

std::vector<const SentenceTemplate*> Corpus::slice(Language lang) const {
  std::vector<const SentenceTemplate*> out;
  for (const auto& t : templates) {
    if (t.language == lang) out.push_back(&t);
  }
  return out;
}

const SentenceTemplate* Corpus::find(std::string_view id, Language lang) const {
  for (const auto& t : templates) {
    if (t.language == lang && t.id == id) return &t;
  }
  return nullptr;
}

json to_json(const SentenceTemplate& t) {
  json j = t.extra.is_object() ? t.extra : json::object();
  j["id"] = t.id;
  j["language"] = to_string(t.language);
  j["gold_label"] = to_string(t.gold_label);
  j["male_text"] = t.male_text;
  j["female_text"] = t.female_text;
  j["reviewed"] = t.reviewed;
  return j;
}

SentenceTemplate template_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "sentence row is not an object");
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) fail(ErrorCode::ParseError, std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
  };
  SentenceTemplate t;
  t.id = str("id");
  const std::string lang = str("language");
  auto l = parse_language(lang);
  if (!l) fail(ErrorCode::ParseError, "unsupported language '" + lang + "'");
  t.language = *l;
  const std::string gold = str("gold_label");
  auto g = parse_label(gold);
  if (!g || *g == Label::invalid) fail(ErrorCode::ParseError, "gold_label must be negative, neutral or positive, got '" + gold + "'");
  t.gold_label = *g;
  t.male_text = str("male_text");
  t.female_text = str("female_text");
  t.reviewed = j.value("reviewed", false);
  static const std::set<std::string> known = {"id", "language", "gold_label", "male_text", "female_text", "reviewed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) t.extra[it.key()] = it.value();
  }
  return t;
}

CorpusLoad load_corpus(const std::filesystem::path& path) {
  CorpusLoad out;
  const auto rows = read_jsonl(path);
  for (const auto& err : rows.errors) out.diagnostics.push_back({"ParseError", path.string(), err});
  for (const auto& line : rows.lines) {
    try {
      out.corpus.templates.push_back(template_from_json(line.value));
    } catch (const Error& e) {
      out.diagnostics.push_back({"InvalidRow", path.string() + ":" + std::to_string(line.line_number), e.what()});
    }
  }
  return out;
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::vector<json> rows;
  for (const auto& t : corpus.templates) rows.push_back(to_json(t));
  write_jsonl(path, rows);
}

std::vector<Diagnostic> validate_corpus(const Corpus& corpus, bool require_balanced) {
  std::vector<Diagnostic> diags;
  std::map<std::pair<std::string, Language>, bool> seen;
  std::map<std::string, std::pair<Label, Language>> label_of;

  for (const auto& t : corpus.templates) {
    if (t.id.empty()) diags.push_back({"MissingId", "", "template without id"});
    if (!seen.emplace(std::make_pair(t.id, t.language), true).second) {
      diags.push_back({"DuplicateId", t.id, "id repeated within language " + std::string(to_string(t.language))});
    }
    for (Variant v : {Variant::male, Variant::female}) {
      const std::size_t n = text::count_occurrences(t.text(v), kTargetPlaceholder);
      if (n == 0) {
        diags.push_back({"MissingPlaceholder", t.id, std::string(to_string(v)) + "_text has no {{TARGET}}"});
      } else if (n > 1) {
        diags.push_back({"RepeatedPlaceholder", t.id,
                         std::string(to_string(v)) + "_text has " + std::to_string(n) + " {{TARGET}} tokens"});
      }
    }
    if (t.gold_label == Label::invalid) diags.push_back({"InvalidGoldLabel", t.id, "gold label is not a sentiment class"});
    auto [it, inserted] = label_of.emplace(t.id, std::make_pair(t.gold_label, t.language));
    if (!inserted && it->second.first != t.gold_label) {
      diags.push_back({"LabelMismatch", t.id,
                       std::string(to_string(it->second.first)) + " in " + std::string(to_string(it->second.second)) +
                           " but " + std::string(to_string(t.gold_label)) + " in " + std::string(to_string(t.language))});
    }
  }

  if (require_balanced) {
    for (const auto& s : corpus_stats(corpus)) {
      if (s.per_class[0] != s.per_class[1] || s.per_class[1] != s.per_class[2]) {
        diags.push_back({"Unbalanced", std::string(to_string(s.language)),
                         "class counts " + std::to_string(s.per_class[0]) + "/" + std::to_string(s.per_class[1]) + "/" +
                             std::to_string(s.per_class[2]) + " (negative/neutral/positive)"});
      }
    }
  }
  return diags;
}

std::vector<CorpusStats> corpus_stats(const Corpus& corpus) {
  std::vector<CorpusStats> out;
  for (Language lang : corpus.languages()) {
    CorpusStats s{lang};
    for (const auto* t : corpus.slice(lang)) {
      ++s.templates;
      if (is_valid(t->gold_label)) ++s.per_class[class_index(t->gold_label)];
      if (t->reviewed) ++s.reviewed;
    }
    out.push_back(s);
  }
  return out;
}

const std::string& presented_name(const PoliticalEntity& entity, bool control) {
  if (!control) return entity.name;
  if (!entity.control_name) fail(ErrorCode::MissingControlName, "entity " + entity.id + " has no control name");
  return *entity.control_name;
}

std::string instantiate(const SentenceTemplate& t, const PoliticalEntity& entity,
                        const std::optional<std::string>& name_override) {
  const std::string& base = t.text(variant_for(entity.gender));
  if (base.find(kTargetPlaceholder) == std::string::npos) {
    fail(ErrorCode::InvalidArgument, "template " + t.id + " has no placeholder");
  }
  return text::replace_first(base, kTargetPlaceholder, name_override ? *name_override : entity.name);
}

}  // namespace probe
