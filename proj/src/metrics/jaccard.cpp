#include "probe/metrics/jaccard.hpp"

#include "probe/core/errors.hpp"

#include <set>
#include <tuple>

namespace probe {

namespace {

using Coord = std::tuple<std::string, std::string, Variant>;  // entity, sentence, variant

std::map<Coord, std::set<Label>> valid_labels(std::span<const PredictionRecord> recs) {
  std::map<Coord, std::set<Label>> out;
  for (const auto& r : recs) {
    if (is_valid(r.label)) out[{r.entity_id, r.sentence_id, r.variant}].insert(r.label);
  }
  return out;
}

}  // namespace

JaccardResult cross_language_jaccard(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b) {
  const auto la = valid_labels(a);
  const auto lb = valid_labels(b);
  // entity -> (|A n B|, |A| + |B|)
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& [coord, labels_a] : la) {
    const auto it = lb.find(coord);
    if (it == lb.end()) continue;
    auto& c = counts[std::get<0>(coord)];
    for (Label l : labels_a) c.first += it->second.count(l);
    c.second += labels_a.size() + it->second.size();
  }
  if (counts.empty()) fail(ErrorCode::NoOverlap, "the two runs share no valid coordinate");
  JaccardResult res;
  double sum = 0.0;
  for (const auto& [entity, c] : counts) {
    const double j = static_cast<double>(c.first) / static_cast<double>(c.second - c.first);
    res.per_entity[entity] = j;
    sum += j;
  }
  res.mean = sum / static_cast<double>(counts.size());
  return res;
}

JaccardTable jaccard_table(const std::map<std::string, std::vector<PredictionRecord>>& runs) {
  JaccardTable t;
  for (const auto& [k, v] : runs) t.keys.push_back(k);
  const std::size_t n = t.keys.size();
  t.values.assign(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = cross_language_jaccard(runs.at(t.keys[i]), runs.at(t.keys[j])).mean;
      t.values[i * n + j] = v;
      t.values[j * n + i] = v;
    }
  }
  return t;
}

}  // namespace probe
