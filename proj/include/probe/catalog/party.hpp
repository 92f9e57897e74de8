#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>

namespace probe {

// Calendar date; only ordering and ISO-8601 round-trip are needed.
struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
};

std::optional<Date> parse_iso_date(std::string_view text);
std::string to_iso_string(const Date& d);

enum class ClaimRank { preferred, normal, deprecated };

std::optional<ClaimRank> parse_claim_rank(std::string_view text);
std::string_view to_string(ClaimRank rank);

struct PartyClaim {
  std::string party_id;
  std::string party_name;
  ClaimRank rank = ClaimRank::normal;
  std::optional<Date> end_time;
};

struct PartyRef {
  std::string id;
  std::string name;

  bool operator==(const PartyRef&) const = default;
};

// Picks one party from an entity's affiliation claims:
//   1. the first preferred-rank claim with a non-blank name;
//   2. otherwise a usable non-deprecated claim with no end time;
//   3. otherwise the usable claim with the latest end time (first wins ties).
// Throws AllDeprecated / NoUsableName.
PartyRef resolve_party(std::span<const PartyClaim> claims);

}  // namespace probe
