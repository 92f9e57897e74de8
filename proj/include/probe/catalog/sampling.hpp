#pragma once

#include "probe/catalog/entity.hpp"

#include <string>
#include <vector>

namespace probe {

// Per-country, per-alignment caps. Defaults are this tool's choice; there is
// no canonical setting.
struct SamplingQuotas {
  int extremes_and_big_tent = 2;  // k1: FL, BT
  int centre_left_right = 2;      // k2: CL, CR
  int centre = 1;                 // k3: CC
  int other = 3;                  // k4: LL, RR, FR

  int quota_for(Alignment a) const;
};

// Throws InvalidArgument unless every quota is >= 1.
void validate_quotas(const SamplingQuotas& q);
// "k1,k2,k3,k4".
SamplingQuotas parse_quotas(std::string_view text);

struct SampleResult {
  std::vector<PoliticalEntity> panel;
  std::vector<Diagnostic> warnings;  // UnknownCountry for countries with no entities
};

// Country by country (in the order given), takes the most-mentioned entities
// of each alignment group up to its quota. Mention-count ties go to the
// smaller id. Groups are visited FL, BT, CL, CR, CC, then LL, RR, FR.
SampleResult hierarchical_sample(const std::vector<PoliticalEntity>& entities,
                                 const std::vector<std::string>& countries,
                                 const SamplingQuotas& quotas);

}  // namespace probe
