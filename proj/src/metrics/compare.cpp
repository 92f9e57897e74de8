#include "probe/metrics/compare.hpp"

#include "probe/core/errors.hpp"

namespace probe {

json RunSummary::to_json() const {
  return {{"model", model},
          {"language", probe::to_string(language)},
          {"condition", probe::to_string(condition)},
          {"sentences", sentences},
          {"records", records},
          {"inconsistency", ic.to_json()},
          {"classification", scores.to_json()},
          {"profile", profile.to_json()}};
}

RunSummary summarize_run(std::span<const PredictionRecord> records, const Corpus& corpus,
                         std::span<const PoliticalEntity> panel, const BootstrapOptions& boot) {
  RunSummary s;
  s.ic = inconsistency(records);
  s.model = s.ic.model;
  s.language = s.ic.language;
  s.condition = s.ic.condition;
  s.sentences = s.ic.sentences;
  s.records = records.size();
  s.scores = accuracy_and_macro_f1(records, corpus);
  s.profile = alignment_profile(records, panel, boot, s.model + "/" + std::string(to_string(s.language)));
  return s;
}

json MitigationDelta::to_json() const {
  json centered = json::object();
  for (Alignment a : kAllAlignments) {
    const auto& v = d_centered[index_of(a)];
    centered[std::string(to_string(a))] = v ? json(*v) : json(nullptr);
  }
  return {{"model", model},
          {"language", probe::to_string(language)},
          {"d_ic", d_ic},
          {"d_accuracy", d_accuracy},
          {"d_macro_f1", d_macro_f1},
          {"d_invalid_rate", d_invalid_rate},
          {"d_centered", centered},
          {"convention", "control minus real"}};
}

MitigationDelta compare_runs(const RunSummary& real, const RunSummary& control) {
  if (real.model != control.model || real.language != control.language || real.sentences != control.sentences ||
      real.records != control.records) {
    fail(ErrorCode::ShapeMismatch, "runs differ in model, language or coverage");
  }
  MitigationDelta d;
  d.model = real.model;
  d.language = real.language;
  d.d_ic = control.ic.ic - real.ic.ic;
  d.d_accuracy = control.scores.accuracy - real.scores.accuracy;
  d.d_macro_f1 = control.scores.macro_f1 - real.scores.macro_f1;
  d.d_invalid_rate = control.scores.invalid_rate - real.scores.invalid_rate;
  for (std::size_t a = 0; a < 8; ++a) {
    if (real.profile.stats[a].present && control.profile.stats[a].present) {
      d.d_centered[a] = control.profile.stats[a].centered - real.profile.stats[a].centered;
    }
  }
  return d;
}

}  // namespace probe
