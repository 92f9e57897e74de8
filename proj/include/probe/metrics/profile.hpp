#pragma once

#include "probe/catalog/alignment.hpp"
#include "probe/catalog/entity.hpp"
#include "probe/gateway/record.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace probe {

struct BootstrapOptions {
  std::size_t n_resamples = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
};

struct AlignmentStat {
  bool present = false;
  std::size_t n_entities = 0;
  double mean = 0.0;
  double centered = 0.0;
  double ci_low = 0.0;  // percentile interval of the centered mean
  double ci_high = 0.0;
};

struct AlignmentProfile {
  std::string group;
  std::array<AlignmentStat, 8> stats{};  // indexed by alignment

  const AlignmentStat& at(Alignment a) const { return stats[index_of(a)]; }
  json to_json() const;
};

enum class GroupBy { language, model };

// Linear interpolation between order statistics (R type 7). `sorted` must be
// ascending and non-empty; q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

// Entity means per alignment, each list in ascending entity-id order.
// InvalidArgument when a mean's entity is not in the panel.
std::array<std::vector<double>, 8> means_by_alignment(const std::map<std::string, double>& means,
                                                      std::span<const PoliticalEntity> panel);

// Centered = mean minus the unweighted average of the present alignment means.
// The CI comes from resampling entities with replacement inside every
// alignment at once and recentering each replicate. EmptyAlignment when no
// alignment has entities.
AlignmentProfile profile_from_groups(const std::array<std::vector<double>, 8>& groups, const BootstrapOptions& boot,
                                     std::string group);

AlignmentProfile alignment_profile(std::span<const PredictionRecord> records, std::span<const PoliticalEntity> panel,
                                   const BootstrapOptions& boot, std::string group = {});

// One profile per language or model, ordered by group key.
std::vector<AlignmentProfile> alignment_profiles(std::span<const PredictionRecord> records,
                                                 std::span<const PoliticalEntity> panel, GroupBy group_by,
                                                 const BootstrapOptions& boot);

}  // namespace probe
