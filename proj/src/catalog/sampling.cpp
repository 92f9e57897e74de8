#include "probe/catalog/sampling.hpp"

#include "probe/core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace probe {

int SamplingQuotas::quota_for(Alignment a) const {
  switch (a) {
    case Alignment::FL:
    case Alignment::BT: return extremes_and_big_tent;
    case Alignment::CL:
    case Alignment::CR: return centre_left_right;
    case Alignment::CC: return centre;
    default: return other;
  }
}

void validate_quotas(const SamplingQuotas& q) {
  if (q.extremes_and_big_tent < 1 || q.centre_left_right < 1 || q.centre < 1 || q.other < 1) {
    fail(ErrorCode::InvalidArgument, "sampling quotas must all be >= 1");
  }
}

SamplingQuotas parse_quotas(std::string_view text) {
  std::vector<int> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      fail(ErrorCode::InvalidArgument, "quotas must be four comma-separated integers, got '" + std::string(text) + "'");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() != 4) fail(ErrorCode::InvalidArgument, "quotas need exactly four values (k1,k2,k3,k4)");
  SamplingQuotas q{values[0], values[1], values[2], values[3]};
  validate_quotas(q);
  return q;
}

SampleResult hierarchical_sample(const std::vector<PoliticalEntity>& entities,
                                 const std::vector<std::string>& countries,
                                 const SamplingQuotas& quotas) {
  validate_quotas(quotas);
  static constexpr std::array<Alignment, 8> kGroupOrder = {
      Alignment::FL, Alignment::BT, Alignment::CL, Alignment::CR,
      Alignment::CC, Alignment::LL, Alignment::RR, Alignment::FR};

  SampleResult result;
  std::set<std::string> seen_countries;
  std::set<std::string> taken;
  for (const auto& country : countries) {
    if (!seen_countries.insert(country).second) continue;

    std::vector<const PoliticalEntity*> in_country;
    for (const auto& e : entities) {
      if (e.country == country) in_country.push_back(&e);
    }
    if (in_country.empty()) {
      result.warnings.push_back({"UnknownCountry", country, "no entities for country '" + country + "'; skipped"});
      continue;
    }

    for (Alignment group : kGroupOrder) {
      std::vector<const PoliticalEntity*> subset;
      for (const auto* e : in_country) {
        if (e->alignment == group) subset.push_back(e);
      }
      std::sort(subset.begin(), subset.end(), [](const PoliticalEntity* a, const PoliticalEntity* b) {
        if (a->mention_count != b->mention_count) return a->mention_count > b->mention_count;
        return a->id < b->id;
      });
      const auto k = std::min<std::size_t>(subset.size(), static_cast<std::size_t>(quotas.quota_for(group)));
      for (std::size_t i = 0; i < k; ++i) {
        if (taken.insert(subset[i]->id).second) result.panel.push_back(*subset[i]);
      }
    }
  }
  return result;
}

}  // namespace probe
