#include "probe/metrics/profile.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"
#include "probe/metrics/scores.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace probe {

json AlignmentProfile::to_json() const {
  json rows = json::object();
  for (Alignment a : kAllAlignments) {
    const auto& s = at(a);
    if (!s.present) {
      rows[std::string(to_string(a))] = nullptr;
      continue;
    }
    rows[std::string(to_string(a))] = {{"n_entities", s.n_entities},
                                       {"mean", s.mean},
                                       {"centered", s.centered},
                                       {"ci_low", s.ci_low},
                                       {"ci_high", s.ci_high}};
  }
  return {{"group", group}, {"alignments", rows}};
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) fail(ErrorCode::EmptySet, "quantile of an empty sample");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::array<std::vector<double>, 8> means_by_alignment(const std::map<std::string, double>& means,
                                                      std::span<const PoliticalEntity> panel) {
  std::unordered_map<std::string_view, Alignment> align;
  for (const auto& e : panel) align.emplace(e.id, e.alignment);
  std::array<std::vector<double>, 8> groups;
  for (const auto& [id, m] : means) {
    const auto it = align.find(id);
    if (it == align.end()) fail(ErrorCode::InvalidArgument, "entity " + id + " is not in the panel");
    groups[index_of(it->second)].push_back(m);
  }
  return groups;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

AlignmentProfile profile_from_groups(const std::array<std::vector<double>, 8>& groups, const BootstrapOptions& boot,
                                     std::string group) {
  AlignmentProfile prof;
  prof.group = std::move(group);
  std::size_t present = 0;
  double grand = 0.0;
  for (std::size_t a = 0; a < 8; ++a) {
    auto& s = prof.stats[a];
    s.n_entities = groups[a].size();
    s.present = s.n_entities > 0;
    if (!s.present) continue;
    s.mean = mean_of(groups[a]);
    grand += s.mean;
    ++present;
  }
  if (present == 0) fail(ErrorCode::EmptyAlignment, "no alignment has entities");
  grand /= static_cast<double>(present);
  for (auto& s : prof.stats) {
    if (s.present) s.centered = s.mean - grand;
  }

  if (boot.n_resamples == 0) {
    for (auto& s : prof.stats) s.ci_low = s.ci_high = s.centered;
    return prof;
  }
  std::array<std::vector<double>, 8> reps;
  Rng rng(boot.seed);
  std::array<double, 8> m{};
  for (std::size_t r = 0; r < boot.n_resamples; ++r) {
    double g = 0.0;
    for (std::size_t a = 0; a < 8; ++a) {
      const auto& v = groups[a];
      if (v.empty()) continue;
      double sum = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) sum += v[rng.below(v.size())];
      m[a] = sum / static_cast<double>(v.size());
      g += m[a];
    }
    g /= static_cast<double>(present);
    for (std::size_t a = 0; a < 8; ++a) {
      if (!groups[a].empty()) reps[a].push_back(m[a] - g);
    }
  }
  const double tail = (1.0 - boot.level) / 2.0;
  for (std::size_t a = 0; a < 8; ++a) {
    auto& s = prof.stats[a];
    if (!s.present) continue;
    std::sort(reps[a].begin(), reps[a].end());
    s.ci_low = quantile_sorted(reps[a], tail);
    s.ci_high = quantile_sorted(reps[a], 1.0 - tail);
  }
  return prof;
}

AlignmentProfile alignment_profile(std::span<const PredictionRecord> records, std::span<const PoliticalEntity> panel,
                                   const BootstrapOptions& boot, std::string group) {
  return profile_from_groups(means_by_alignment(entity_means(records), panel), boot, std::move(group));
}

std::vector<AlignmentProfile> alignment_profiles(std::span<const PredictionRecord> records,
                                                 std::span<const PoliticalEntity> panel, GroupBy group_by,
                                                 const BootstrapOptions& boot) {
  std::map<std::string, std::vector<PredictionRecord>> split;
  for (const auto& r : records) {
    split[group_by == GroupBy::model ? r.model : std::string(to_string(r.language))].push_back(r);
  }
  std::vector<AlignmentProfile> out;
  for (const auto& [key, recs] : split) out.push_back(alignment_profile(recs, panel, boot, key));
  return out;
}

}  // namespace probe
