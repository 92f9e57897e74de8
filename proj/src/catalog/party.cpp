#include "probe/catalog/party.hpp"

#include "probe/core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace probe {
namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
  // Accepts YYYY-MM-DD, optionally followed by a time part (Wikidata style).
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') return std::nullopt;
  Date d;
  if (!parse_int(text.substr(0, 4), d.year) || !parse_int(text.substr(5, 2), d.month) ||
      !parse_int(text.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
  return d;
}

std::string to_iso_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::optional<ClaimRank> parse_claim_rank(std::string_view text) {
  if (text == "preferred") return ClaimRank::preferred;
  if (text == "normal") return ClaimRank::normal;
  if (text == "deprecated") return ClaimRank::deprecated;
  return std::nullopt;
}

std::string_view to_string(ClaimRank rank) {
  switch (rank) {
    case ClaimRank::preferred: return "preferred";
    case ClaimRank::normal: return "normal";
    case ClaimRank::deprecated: return "deprecated";
  }
  return "normal";
}

PartyRef resolve_party(std::span<const PartyClaim> claims) {
  if (claims.empty()) fail(ErrorCode::InvalidArgument, "resolve_party: no claims");

  const bool all_deprecated = std::all_of(claims.begin(), claims.end(), [](const PartyClaim& c) {
    return c.rank == ClaimRank::deprecated;
  });
  if (all_deprecated) fail(ErrorCode::AllDeprecated, "every party claim is deprecated");

  for (const auto& c : claims) {
    if (c.rank == ClaimRank::preferred && !is_blank(c.party_name)) return {c.party_id, c.party_name};
  }

  const PartyClaim* best = nullptr;
  for (const auto& c : claims) {
    if (c.rank == ClaimRank::deprecated || is_blank(c.party_name)) continue;
    if (!c.end_time) return {c.party_id, c.party_name};
    if (best == nullptr || *c.end_time > *best->end_time) best = &c;
  }
  if (best == nullptr) fail(ErrorCode::NoUsableName, "no non-deprecated claim has a party name");
  return {best->party_id, best->party_name};
}

}  // namespace probe
