#include "probe/report/bundle.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"
#include "probe/core/log.hpp"
#include "probe/metrics/alignment_tests.hpp"
#include "probe/metrics/compare.hpp"
#include "probe/metrics/compass.hpp"
#include "probe/metrics/jaccard.hpp"
#include "probe/metrics/similarity.hpp"
#include "probe/report/figures.hpp"
#include "probe/report/format.hpp"
#include "probe/report/tables.hpp"

#include <set>

namespace probe::report {

std::string slug(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                      c == '_' || c == '-';
    out += keep ? c : '_';
  }
  return out;
}

std::string records_jsonl(const std::vector<PredictionRecord>& records) {
  std::string out;
  for (auto r : records) {
    r.cached = false;
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

namespace {

struct Analysed {
  const CellOutcome* cell;
  RunSummary summary;
};

std::string cell_label(const CellOutcome& c) {
  return c.model + "/" + std::string(to_string(c.language)) + "/" + std::string(to_string(c.condition));
}

}  // namespace

ReportBundle build_report(const ReportInputs& in) {
  if (!in.panel || !in.corpus) fail(ErrorCode::InvalidArgument, "report needs the panel and corpus");
  ReportBundle b;
  b.run_id = in.run_id;
  std::vector<std::string> notes;

  std::vector<Analysed> done;
  for (const auto& c : in.cells) {
    if (!c.ok) continue;
    BootstrapOptions boot = in.bootstrap;
    boot.seed = hash_combine(in.bootstrap.seed, c.cell_id);
    try {
      Analysed a{&c, summarize_run(c.records, *in.corpus, *in.panel, boot)};
      a.summary.profile.group = cell_label(c);
      done.push_back(std::move(a));
    } catch (const Error& e) {
      notes.push_back("analysis of " + c.cell_id + " failed: " + e.what());
    }
  }

  std::vector<RunSummary> summaries;
  std::vector<AlignmentProfile> profiles;
  for (const auto& a : done) {
    summaries.push_back(a.summary);
    profiles.push_back(a.summary.profile);
  }
  b.files["tables/inconsistency.csv"] = inconsistency_csv(summaries);
  b.files["tables/profiles.csv"] = profiles_csv(profiles);

  for (const auto& a : done) {
    const std::string id = slug(a.cell->cell_id);
    try {
      const auto table = pairwise_alignment_tests(a.cell->records, *in.panel);
      b.files["tables/pvalues_" + id + ".csv"] = pvalues_csv(table);
      b.files["figures/pvalues_" + id + ".svg"] =
          render_heatmap(pvalue_heatmap(table, "Mann-Whitney p-values, " + cell_label(*a.cell)));
    } catch (const Error& e) {
      notes.push_back("pairwise tests for " + a.cell->cell_id + " skipped: " + e.what());
    }
    if (a.cell->condition == Condition::real) {
      const auto grid = compass_grid(*in.panel, entity_means(a.cell->records));
      if (grid.placed > 0) {
        b.files["tables/compass_" + id + ".csv"] = compass_csv(grid);
        b.files["figures/compass_" + id + "_raw.svg"] = render_heatmap(compass_heatmap(grid, false, "Compass, " + cell_label(*a.cell)));
        b.files["figures/compass_" + id + "_smoothed.svg"] =
            render_heatmap(compass_heatmap(grid, true, "Compass (smoothed), " + cell_label(*a.cell)));
      }
    }
  }

  // Real/control pairs per (model, language), in first-seen order.
  std::vector<ScatterPair> pairs;
  std::vector<MitigationDelta> deltas;
  std::map<std::pair<std::string, Language>, std::size_t> pair_index;
  std::map<std::pair<std::string, Language>, std::pair<const RunSummary*, const RunSummary*>> by_cell;
  for (const auto& s : summaries) {
    const auto key = std::pair{s.model, s.language};
    if (!pair_index.count(key)) {
      pair_index[key] = pairs.size();
      pairs.push_back({s.model + "/" + std::string(to_string(s.language)), std::nullopt, std::nullopt});
    }
    auto& p = pairs[pair_index[key]];
    const ScatterPoint pt{s.ic.ic, s.scores.accuracy};
    (s.condition == Condition::real ? p.real : p.control) = pt;
    (s.condition == Condition::real ? by_cell[key].first : by_cell[key].second) = &s;
  }
  for (const auto& [key, idx] : pair_index) {
    (void)idx;
    const auto& [real, control] = by_cell[key];
    if (!real || !control) continue;
    try {
      deltas.push_back(compare_runs(*real, *control));
    } catch (const Error& e) {
      notes.push_back("comparison for " + key.first + "/" + std::string(to_string(key.second)) + " skipped: " + e.what());
    }
  }
  if (!pairs.empty()) b.files["figures/accuracy_vs_ic.svg"] = render_scatter_accuracy_vs_ic(pairs);
  if (!deltas.empty()) b.files["tables/mitigation.csv"] = mitigation_csv(deltas);

  // Alignment curves: one figure per language and condition, one curve per model.
  std::map<std::pair<Language, Condition>, std::vector<AlignmentProfile>> curves;
  for (const auto& a : done) {
    AlignmentProfile p = a.summary.profile;
    p.group = a.cell->model;
    curves[{a.cell->language, a.cell->condition}].push_back(std::move(p));
  }
  for (const auto& [key, profs] : curves) {
    const std::string name = std::string(to_string(key.first)) + "_" + std::string(to_string(key.second));
    b.files["figures/alignment_" + name + ".svg"] =
        render_alignment_curves(profs, "Centered sentiment by alignment, " + name);
  }

  // Cross-language agreement per model on real-name runs.
  std::map<std::string, std::map<std::string, std::vector<PredictionRecord>>> by_model;
  for (const auto& a : done) {
    if (a.cell->condition != Condition::real) continue;
    by_model[a.cell->model][std::string(to_string(a.cell->language))] = a.cell->records;
  }
  for (const auto& [model, runs] : by_model) {
    if (runs.size() < 2) continue;
    try {
      const auto t = jaccard_table(runs);
      b.files["tables/jaccard_" + slug(model) + ".csv"] = jaccard_csv(t);
      b.files["figures/jaccard_" + slug(model) + ".svg"] = render_heatmap(jaccard_heatmap(t, "Jaccard agreement, " + model));
    } catch (const Error& e) {
      notes.push_back("Jaccard table for " + model + " skipped: " + e.what());
    }
  }

  // Entity similarity across models, per language, on real-name runs.
  if (in.similarity_entities.size() >= 2) {
    std::map<Language, std::vector<PredictionRecord>> by_lang;
    for (const auto& a : done) {
      if (a.cell->condition != Condition::real) continue;
      auto& v = by_lang[a.cell->language];
      v.insert(v.end(), a.cell->records.begin(), a.cell->records.end());
    }
    for (const auto& [lang, recs] : by_lang) {
      const std::string l(to_string(lang));
      try {
        const auto m = similarity_matrix(in.similarity_entities, recs, true);
        b.files["tables/similarity_" + l + ".csv"] = similarity_csv(m);
        b.files["figures/similarity_" + l + ".svg"] = render_heatmap(similarity_heatmap(m, "Entity similarity, " + l));
      } catch (const Error& e) {
        notes.push_back("similarity matrix for " + l + " skipped: " + e.what());
      }
    }
  }

  std::string md = "# Report " + in.run_id + "\n\n";
  md += "| model | language | condition | status | IC | accuracy | macro-F1 | invalid rate |\n";
  md += "|---|---|---|---|---|---|---|---|\n";
  std::map<std::string, const RunSummary*> summary_of;
  for (const auto& a : done) summary_of[a.cell->cell_id] = &a.summary;
  for (const auto& c : in.cells) {
    md += "| " + c.model + " | " + std::string(to_string(c.language)) + " | " + std::string(to_string(c.condition)) +
          " | " + (c.ok ? "ok" : "failed") + " | ";
    if (const auto it = summary_of.find(c.cell_id); it != summary_of.end()) {
      const auto& s = *it->second;
      md += fmt(s.ic.ic) + " | " + fmt(s.scores.accuracy) + " | " + fmt(s.scores.macro_f1) + " | " +
            fmt(s.scores.invalid_rate) + " |\n";
    } else {
      md += " |  |  |  |\n";
    }
  }
  if (!deltas.empty()) {
    md += "\n## Name replacement\n\nDeltas are control minus real; a negative IC delta means the control names reduced "
          "inconsistency.\n\n| model | language | dIC | daccuracy | dmacro-F1 |\n|---|---|---|---|---|\n";
    for (const auto& d : deltas) {
      md += "| " + d.model + " | " + std::string(to_string(d.language)) + " | " + fmt(d.d_ic) + " | " +
            fmt(d.d_accuracy) + " | " + fmt(d.d_macro_f1) + " |\n";
    }
  }
  std::vector<std::string> failures;
  for (const auto& c : in.cells) {
    if (!c.ok) failures.push_back(c.cell_id + ": " + c.error);
  }
  if (!failures.empty() || !notes.empty()) {
    md += "\n## Notes\n\n";
    for (const auto& f : failures) md += "- failed " + f + "\n";
    for (const auto& n : notes) md += "- " + n + "\n";
  }
  md += "\n## Artifacts\n\n";
  for (const auto& [path, content] : b.files) {
    (void)content;
    md += "- `" + path + "`\n";
  }
  b.files["summary.md"] = md;

  json cells = json::array();
  for (const auto& c : in.cells) {
    json j = {{"cell", c.cell_id},
              {"model", c.model},
              {"language", to_string(c.language)},
              {"condition", to_string(c.condition)},
              {"status", c.ok ? "ok" : "failed"}};
    if (c.ok) {
      j["records"] = c.records.size();
      j["records_sha256"] = c.records_sha256;
    } else {
      j["error"] = c.error;
    }
    cells.push_back(j);
  }
  json artifacts = json::object();
  for (const auto& [path, content] : b.files) artifacts[path] = sha256_hex(content);
  b.manifest = {{"run_id", in.run_id},
                {"config_sha256", in.config_hash},
                {"timestamp", in.timestamp ? json(*in.timestamp) : json(nullptr)},
                {"bootstrap", {{"n_resamples", in.bootstrap.n_resamples}, {"seed", in.bootstrap.seed}}},
                {"cells", cells},
                {"artifacts", artifacts}};
  return b;
}

std::filesystem::path write_bundle(const std::filesystem::path& report_dir, const ReportBundle& bundle) {
  const auto root = report_dir / slug(bundle.run_id);
  std::error_code ec;
  for (const char* sub : {"tables", "figures"}) std::filesystem::remove_all(root / sub, ec);
  for (const auto& [path, content] : bundle.files) write_file_atomic(root / path, content);
  write_file_atomic(root / "manifest.json", bundle.manifest.dump(2) + "\n");
  return root;
}

}  // namespace probe::report
