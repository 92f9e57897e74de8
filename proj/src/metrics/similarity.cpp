#include "probe/metrics/similarity.hpp"

#include "probe/core/errors.hpp"
#include "probe/metrics/scores.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

namespace probe {

EntitySentimentMatrix build_entity_matrix(std::span<const PredictionRecord> records, const std::string& entity_id,
                                          const std::vector<std::string>& sentence_ids,
                                          const std::vector<std::string>& model_ids) {
  EntitySentimentMatrix m{entity_id, sentence_ids, model_ids, {}};
  m.cells.assign(sentence_ids.size() * model_ids.size(), std::nullopt);
  std::unordered_map<std::string_view, std::size_t> row, col;
  for (std::size_t i = 0; i < sentence_ids.size(); ++i) row.emplace(sentence_ids[i], i);
  for (std::size_t j = 0; j < model_ids.size(); ++j) col.emplace(model_ids[j], j);
  std::vector<std::pair<double, int>> acc(m.cells.size(), {0.0, 0});
  for (const auto& r : records) {
    if (r.entity_id != entity_id || !is_valid(r.label)) continue;
    const auto ri = row.find(r.sentence_id);
    const auto ci = col.find(r.model);
    if (ri == row.end() || ci == col.end()) continue;
    auto& a = acc[ri->second * model_ids.size() + ci->second];
    a.first += label_to_score(r.label);
    ++a.second;
  }
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (acc[k].second) m.cells[k] = acc[k].first / acc[k].second;
  }
  return m;
}

double entity_similarity(const EntitySentimentMatrix& a, const EntitySentimentMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) fail(ErrorCode::ShapeMismatch, "sentiment matrices index different sets");
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t c = 0; c < a.cols.size(); ++c) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      const auto& x = a.at(r, c);
      const auto& y = b.at(r, c);
      if (!x || !y) continue;
      dot += *x * *y;
      na += *x * *x;
      nb += *y * *y;
    }
    if (na == 0.0 || nb == 0.0) continue;
    total += dot / (std::sqrt(na) * std::sqrt(nb));
    ++used;
  }
  if (used == 0) fail(ErrorCode::AllZeroColumns, "no comparable column between " + a.entity_id + " and " + b.entity_id);
  return total / static_cast<double>(used);
}

SimilarityMatrix similarity_matrix(const std::vector<std::string>& entity_ids, std::span<const PredictionRecord> records,
                                   bool scale100) {
  if (entity_ids.size() < 2) fail(ErrorCode::InvalidArgument, "similarity matrix needs at least two entities");
  const std::set<std::string> wanted(entity_ids.begin(), entity_ids.end());
  std::set<std::string> sentences, models;
  for (const auto& r : records) {
    if (!wanted.count(r.entity_id)) continue;
    sentences.insert(r.sentence_id);
    models.insert(r.model);
  }
  const std::vector<std::string> rows(sentences.begin(), sentences.end());
  const std::vector<std::string> cols(models.begin(), models.end());
  std::vector<EntitySentimentMatrix> mats;
  mats.reserve(entity_ids.size());
  for (const auto& id : entity_ids) mats.push_back(build_entity_matrix(records, id, rows, cols));

  SimilarityMatrix out;
  out.entity_ids = entity_ids;
  out.scale = scale100 ? 100.0 : 1.0;
  const std::size_t n = entity_ids.size();
  out.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i * n + i] = out.scale;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = entity_similarity(mats[i], mats[j]) * out.scale;
      out.values[i * n + j] = s;
      out.values[j * n + i] = s;
    }
  }
  return out;
}

}  // namespace probe
