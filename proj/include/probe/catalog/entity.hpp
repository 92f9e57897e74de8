#pragma once

#include "probe/catalog/alignment.hpp"
#include "probe/catalog/party.hpp"
#include "probe/core/jsonl.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace probe {

enum class Gender { male, female };

std::string_view to_string(Gender g);
std::optional<Gender> parse_gender(std::string_view text);

struct CompassPoint {
  double econ = 0.0;    // 0 fiscally progressive .. 10 fiscally conservative
  double social = 0.0;  // 0 socially progressive .. 10 socially conservative
};

struct PoliticalEntity {
  std::string id;
  std::string name;
  Gender gender = Gender::male;
  int birth_year = 0;
  std::string country;  // ISO-3166 alpha-2
  std::optional<PartyRef> party;
  std::vector<Alignment> raw_alignments;
  Alignment alignment = Alignment::BT;
  long long mention_count = 0;
  std::optional<CompassPoint> compass;
  std::optional<std::string> control_name;
  // Raw affiliation claims, when the row still needs party resolution.
  std::vector<PartyClaim> party_claims;
  // Fields this tool does not interpret; written back untouched.
  json extra = json::object();
};

struct Diagnostic {
  std::string code;     // e.g. "InvalidGender", "AlignmentMismatch"
  std::string subject;  // entity/template id or config key
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

json to_json(const PoliticalEntity& e);
// Throws Error(ParseError) with a readable reason when the row is unusable.
PoliticalEntity entity_from_json(const json& j);

struct EntityLoad {
  std::vector<PoliticalEntity> entities;
  std::vector<Diagnostic> diagnostics;  // rejected rows and parse failures
};

EntityLoad load_entities(const std::filesystem::path& path);
void save_entities(const std::filesystem::path& path, const std::vector<PoliticalEntity>& entities);

bool is_iso_country(std::string_view code);
// English display name for an alpha-2 code ("ES" -> "Spain").
std::string country_display_name(std::string_view code);

// Checks the per-entity invariants plus catalog-wide uniqueness of ids and
// control names. Empty result means the catalog is consistent.
std::vector<Diagnostic> validate_entities(const std::vector<PoliticalEntity>& entities);

// Resolves party_claims into party and raw_alignments into alignment where
// present. Returns diagnostics for rows that could not be resolved.
std::vector<Diagnostic> align_entities(std::vector<PoliticalEntity>& entities);

}  // namespace probe
