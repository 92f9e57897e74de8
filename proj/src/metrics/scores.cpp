#include "probe/metrics/scores.hpp"

#include "probe/core/errors.hpp"

#include <cmath>

namespace probe {

int label_to_score(Label l) {
  switch (l) {
    case Label::negative: return -1;
    case Label::neutral: return 0;
    case Label::positive: return 1;
    case Label::invalid: break;
  }
  fail(ErrorCode::InvalidLabel, "invalid label has no sentiment score");
}

double entropy(const LabelCounts& counts) {
  const std::size_t n = counts[0] + counts[1] + counts[2];
  if (n == 0) fail(ErrorCode::EmptySet, "entropy of an empty label set");
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;
}

double entropy(std::span<const Label> labels) {
  LabelCounts counts{};
  for (Label l : labels) {
    if (!is_valid(l)) fail(ErrorCode::InvalidLabel, "entropy over an invalid label");
    ++counts[class_index(l)];
  }
  return entropy(counts);
}

std::vector<PredictionSet> prediction_sets(std::span<const PredictionRecord> records) {
  std::map<std::string, PredictionSet> by_id;
  for (const auto& r : records) {
    auto& s = by_id[r.sentence_id];
    s.sentence_id = r.sentence_id;
    ++s.total;
    if (is_valid(r.label)) ++s.counts[class_index(r.label)];
  }
  std::vector<PredictionSet> out;
  out.reserve(by_id.size());
  for (auto& [id, s] : by_id) out.push_back(std::move(s));
  return out;
}

json InconsistencyReport::to_json() const {
  return {{"model", model},
          {"language", probe::to_string(language)},
          {"condition", probe::to_string(condition)},
          {"ic", ic},
          {"invalid_rate", invalid_rate},
          {"sentences", sentences},
          {"covered", covered},
          {"per_sentence_entropy", per_sentence_entropy}};
}

namespace {

void require_single_cell(std::span<const PredictionRecord> records) {
  for (const auto& r : records) {
    if (r.model != records[0].model || r.language != records[0].language || r.condition != records[0].condition) {
      fail(ErrorCode::InvalidArgument, "records mix models, languages or conditions");
    }
  }
}

}  // namespace

InconsistencyReport inconsistency(std::span<const PredictionRecord> records) {
  if (records.empty()) fail(ErrorCode::NoValidRecords, "no records");
  require_single_cell(records);
  InconsistencyReport rep;
  rep.model = records[0].model;
  rep.language = records[0].language;
  rep.condition = records[0].condition;

  std::size_t invalid = 0;
  double sum = 0.0;
  for (const auto& s : prediction_sets(records)) {
    ++rep.sentences;
    invalid += s.total - s.valid();
    if (s.valid() == 0) continue;
    const double h = entropy(s.counts);
    rep.per_sentence_entropy[s.sentence_id] = h;
    sum += h;
    ++rep.covered;
  }
  if (rep.covered == 0) fail(ErrorCode::NoValidRecords, "no sentence has a valid label");
  rep.ic = sum / static_cast<double>(rep.covered);
  rep.invalid_rate = static_cast<double>(invalid) / static_cast<double>(records.size());
  return rep;
}

json ClassificationScores::to_json() const {
  return {{"accuracy", accuracy},
          {"macro_f1", macro_f1},
          {"per_class_f1", {{"negative", per_class_f1[0]}, {"neutral", per_class_f1[1]}, {"positive", per_class_f1[2]}}},
          {"invalid_rate", invalid_rate},
          {"n", n},
          {"confusion", confusion}};
}

ClassificationScores classification_scores(const std::array<std::array<std::size_t, 4>, 3>& confusion) {
  ClassificationScores s;
  s.confusion = confusion;
  std::size_t correct = 0, invalid = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t p = 0; p < 4; ++p) s.n += confusion[g][p];
    correct += confusion[g][g];
    invalid += confusion[g][3];
  }
  if (s.n == 0) return s;
  s.accuracy = static_cast<double>(correct) / static_cast<double>(s.n);
  s.invalid_rate = static_cast<double>(invalid) / static_cast<double>(s.n);
  double f1_sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const double tp = static_cast<double>(confusion[c][c]);
    double fp = 0.0, fn = 0.0;
    for (std::size_t g = 0; g < 3; ++g) {
      if (g != c) fp += static_cast<double>(confusion[g][c]);
    }
    for (std::size_t p = 0; p < 4; ++p) {
      if (p != c) fn += static_cast<double>(confusion[c][p]);
    }
    if (tp + fp + fn == 0.0) continue;
    s.per_class_f1[c] = 2.0 * tp / (2.0 * tp + fp + fn);
    f1_sum += s.per_class_f1[c];
    ++defined;
  }
  s.macro_f1 = defined ? f1_sum / static_cast<double>(defined) : 0.0;
  return s;
}

ClassificationScores accuracy_and_macro_f1(std::span<const PredictionRecord> records, const Corpus& corpus) {
  std::array<std::array<std::size_t, 4>, 3> confusion{};
  for (const auto& r : records) {
    const SentenceTemplate* t = corpus.find(r.sentence_id, r.language);
    if (!t) fail(ErrorCode::InvalidArgument, "no gold label for sentence " + r.sentence_id);
    ++confusion[class_index(t->gold_label)][is_valid(r.label) ? class_index(r.label) : 3];
  }
  return classification_scores(confusion);
}

std::map<std::string, double> entity_means(std::span<const PredictionRecord> records) {
  std::map<std::string, std::pair<long long, std::size_t>> acc;
  for (const auto& r : records) {
    if (!is_valid(r.label)) continue;
    auto& a = acc[r.entity_id];
    a.first += label_to_score(r.label);
    ++a.second;
  }
  std::map<std::string, double> out;
  for (const auto& [id, a] : acc) out[id] = static_cast<double>(a.first) / static_cast<double>(a.second);
  return out;
}

}  // namespace probe
