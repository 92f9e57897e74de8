#include "probe/catalog/entity.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/text.hpp"

#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <cstring>
#include <map>
#include <set>

namespace probe {
namespace {

// Keys interpreted by entity_from_json; everything else lands in extra.
const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "id",       "name",           "gender",    "birth_year",    "country",     "party",
      "raw_alignments", "alignment", "mention_count", "compass", "control_name", "party_claims"};
  return keys;
}

[[noreturn]] void bad_row(const std::string& why) { fail(ErrorCode::ParseError, why); }

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) bad_row(std::string("missing string field '") + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

std::string_view to_string(Gender g) { return g == Gender::male ? "male" : "female"; }

std::optional<Gender> parse_gender(std::string_view text) {
  if (text == "male") return Gender::male;
  if (text == "female") return Gender::female;
  return std::nullopt;
}

json to_json(const PoliticalEntity& e) {
  json j = e.extra.is_object() ? e.extra : json::object();
  j["id"] = e.id;
  j["name"] = e.name;
  j["gender"] = to_string(e.gender);
  j["birth_year"] = e.birth_year;
  j["country"] = e.country;
  if (e.party) {
    j["party"] = {{"id", e.party->id}, {"name", e.party->name}};
  } else {
    j["party"] = nullptr;
  }
  json raw = json::array();
  for (Alignment a : e.raw_alignments) raw.push_back(to_string(a));
  j["raw_alignments"] = raw;
  j["alignment"] = to_string(e.alignment);
  j["mention_count"] = e.mention_count;
  if (e.compass) {
    j["compass"] = {{"econ", e.compass->econ}, {"social", e.compass->social}};
  } else {
    j["compass"] = nullptr;
  }
  if (e.control_name) {
    j["control_name"] = *e.control_name;
  } else {
    j["control_name"] = nullptr;
  }
  if (!e.party_claims.empty()) {
    json claims = json::array();
    for (const auto& c : e.party_claims) {
      json cj = {{"party_id", c.party_id}, {"party_name", c.party_name}, {"rank", to_string(c.rank)}};
      cj["end_time"] = c.end_time ? json(to_iso_string(*c.end_time)) : json(nullptr);
      claims.push_back(cj);
    }
    j["party_claims"] = claims;
  }
  return j;
}

PoliticalEntity entity_from_json(const json& j) {
  if (!j.is_object()) bad_row("entity row is not an object");
  PoliticalEntity e;
  e.id = require_string(j, "id");
  e.name = require_string(j, "name");

  const std::string gender = require_string(j, "gender");
  auto g = parse_gender(gender);
  if (!g) bad_row("unsupported gender '" + gender + "' (expected male or female)");
  e.gender = *g;

  if (!j.contains("birth_year") || !j["birth_year"].is_number_integer()) bad_row("missing integer field 'birth_year'");
  e.birth_year = j["birth_year"].get<int>();
  e.country = require_string(j, "country");

  if (j.contains("party") && j["party"].is_object()) {
    const auto& p = j["party"];
    e.party = PartyRef{p.value("id", std::string{}), p.value("name", std::string{})};
  }

  if (j.contains("raw_alignments") && j["raw_alignments"].is_array()) {
    for (const auto& code : j["raw_alignments"]) {
      auto a = code.is_string() ? parse_alignment(code.get<std::string>()) : std::nullopt;
      if (!a) bad_row("unknown alignment code " + code.dump());
      e.raw_alignments.push_back(*a);
    }
  }
  if (j.contains("alignment") && j["alignment"].is_string()) {
    auto a = parse_alignment(j["alignment"].get<std::string>());
    if (!a) bad_row("unknown alignment code " + j["alignment"].dump());
    e.alignment = *a;
  } else if (!e.raw_alignments.empty()) {
    e.alignment = compute_alignment(e.raw_alignments);
  } else {
    bad_row("entity has neither 'alignment' nor 'raw_alignments'");
  }

  if (j.contains("mention_count")) {
    if (!j["mention_count"].is_number_integer() || j["mention_count"].get<long long>() < 0) {
      bad_row("'mention_count' must be a non-negative integer");
    }
    e.mention_count = j["mention_count"].get<long long>();
  }

  if (j.contains("compass") && j["compass"].is_object()) {
    const auto& c = j["compass"];
    if (!c.contains("econ") || !c["econ"].is_number() || !c.contains("social") || !c["social"].is_number()) {
      bad_row("'compass' needs numeric 'econ' and 'social'");
    }
    e.compass = CompassPoint{c["econ"].get<double>(), c["social"].get<double>()};
  }
  if (j.contains("control_name") && j["control_name"].is_string()) e.control_name = j["control_name"].get<std::string>();

  if (j.contains("party_claims") && j["party_claims"].is_array()) {
    for (const auto& cj : j["party_claims"]) {
      PartyClaim c;
      c.party_id = cj.value("party_id", std::string{});
      c.party_name = cj.value("party_name", std::string{});
      auto rank = parse_claim_rank(cj.value("rank", std::string{"normal"}));
      if (!rank) bad_row("unknown claim rank in party_claims");
      c.rank = *rank;
      if (cj.contains("end_time") && cj["end_time"].is_string()) {
        c.end_time = parse_iso_date(cj["end_time"].get<std::string>());
        if (!c.end_time) bad_row("bad end_time date " + cj["end_time"].dump());
      }
      e.party_claims.push_back(std::move(c));
    }
  }

  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known_keys().count(it.key())) e.extra[it.key()] = it.value();
  }
  return e;
}

EntityLoad load_entities(const std::filesystem::path& path) {
  EntityLoad out;
  const auto rows = read_jsonl(path);
  for (const auto& err : rows.errors) out.diagnostics.push_back({"ParseError", path.string(), err});
  for (const auto& line : rows.lines) {
    try {
      out.entities.push_back(entity_from_json(line.value));
    } catch (const Error& e) {
      const std::string id = line.value.is_object() ? line.value.value("id", std::string{}) : std::string{};
      const bool gender = line.value.is_object() && line.value.contains("gender") &&
                          line.value["gender"].is_string() &&
                          !parse_gender(line.value["gender"].get<std::string>());
      out.diagnostics.push_back({gender ? "InvalidGender" : "InvalidRow",
                                 id.empty() ? path.string() + ":" + std::to_string(line.line_number) : id,
                                 e.what()});
    }
  }
  return out;
}

void save_entities(const std::filesystem::path& path, const std::vector<PoliticalEntity>& entities) {
  std::vector<json> rows;
  rows.reserve(entities.size());
  for (const auto& e : entities) rows.push_back(to_json(e));
  write_jsonl(path, rows);
}

bool is_iso_country(std::string_view code) {
  if (code.size() != 2) return false;
  for (const char* const* c = icu::Locale::getISOCountries(); *c != nullptr; ++c) {
    if (std::strncmp(*c, code.data(), 2) == 0 && (*c)[2] == '\0') return true;
  }
  return false;
}

std::string country_display_name(std::string_view code) {
  const std::string region(code);
  icu::Locale locale("", region.c_str());
  icu::UnicodeString name;
  locale.getDisplayCountry(icu::Locale::getEnglish(), name);
  std::string out;
  name.toUTF8String(out);
  return out.empty() ? region : out;
}

std::vector<Diagnostic> validate_entities(const std::vector<PoliticalEntity>& entities) {
  std::vector<Diagnostic> diags;
  std::map<std::string, std::string> ids;
  std::map<std::string, std::string> names;          // normalized real name -> id
  std::map<std::string, std::string> control_names;  // normalized control name -> id

  for (const auto& e : entities) {
    if (e.id.empty()) diags.push_back({"MissingId", e.name, "entity without id"});
    if (!ids.emplace(e.id, e.id).second) diags.push_back({"DuplicateId", e.id, "id appears more than once"});
    if (e.name.empty()) diags.push_back({"MissingName", e.id, "entity without name"});
    if (!is_iso_country(e.country)) {
      diags.push_back({"InvalidCountry", e.id, "'" + e.country + "' is not an ISO-3166 alpha-2 code"});
    }
    if (!e.raw_alignments.empty() && compute_alignment(e.raw_alignments) != e.alignment) {
      diags.push_back({"AlignmentMismatch", e.id,
                       "alignment " + std::string(to_string(e.alignment)) + " disagrees with raw_alignments (" +
                           std::string(to_string(compute_alignment(e.raw_alignments))) + ")"});
    }
    if (e.compass) {
      const auto in_range = [](double v) { return v >= 0.0 && v <= 10.0; };
      if (!in_range(e.compass->econ) || !in_range(e.compass->social)) {
        diags.push_back({"CompassOutOfRange", e.id, "compass coordinates must lie in [0, 10]"});
      }
    }
    names.emplace(text::normalize_name(e.name), e.id);
  }

  for (const auto& e : entities) {
    if (!e.control_name) continue;
    const std::string norm = text::normalize_name(*e.control_name);
    if (norm.empty()) {
      diags.push_back({"EmptyControlName", e.id, "control name is blank"});
      continue;
    }
    if (auto it = names.find(norm); it != names.end()) {
      diags.push_back({"ControlNameCollision", e.id,
                       "control name '" + *e.control_name + "' equals the name of entity " + it->second});
    }
    auto [it, inserted] = control_names.emplace(norm, e.id);
    if (!inserted) {
      diags.push_back({"DuplicateControlName", e.id,
                       "control name '" + *e.control_name + "' already used by entity " + it->second});
    }
  }
  return diags;
}

std::vector<Diagnostic> align_entities(std::vector<PoliticalEntity>& entities) {
  std::vector<Diagnostic> diags;
  for (auto& e : entities) {
    if (!e.party_claims.empty()) {
      try {
        e.party = resolve_party(e.party_claims);
      } catch (const Error& err) {
        diags.push_back({std::string(to_string(err.code())), e.id, err.what()});
      }
    }
    if (!e.raw_alignments.empty()) e.alignment = compute_alignment(e.raw_alignments);
  }
  return diags;
}

}  // namespace probe
