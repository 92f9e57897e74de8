#include "probe/catalog/control_names.hpp"
#include "probe/catalog/sampling.hpp"
#include "probe/cli/config.hpp"
#include "probe/cli/pipeline.hpp"
#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"
#include "probe/core/log.hpp"
#include "probe/corpus/translation.hpp"
#include "probe/gateway/executor.hpp"
#include "probe/metrics/alignment_tests.hpp"
#include "probe/metrics/compare.hpp"
#include "probe/metrics/compass.hpp"
#include "probe/metrics/jaccard.hpp"
#include "probe/metrics/similarity.hpp"
#include "probe/report/bundle.hpp"
#include "probe/sim/simulator.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace probe;

namespace {

constexpr int kOk = 0;
constexpr int kCellFailure = 1;
constexpr int kConfigError = 2;

int print_diagnostics(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const auto& d : diags) out.push_back({{"code", d.code}, {"subject", d.subject}, {"message", d.message}});
  std::cout << out.dump(2) << "\n";
  return diags.empty() ? kOk : kConfigError;
}

std::vector<PoliticalEntity> read_entities(const std::string& path) {
  auto load = load_entities(path);
  if (!load.diagnostics.empty()) {
    print_diagnostics(load.diagnostics);
    fail(ErrorCode::InvalidArgument, "entities file has unreadable rows");
  }
  return std::move(load.entities);
}

Corpus read_corpus(const std::string& path) {
  auto load = load_corpus(path);
  if (!load.diagnostics.empty()) {
    print_diagnostics(load.diagnostics);
    fail(ErrorCode::InvalidArgument, "sentences file has unreadable rows");
  }
  return std::move(load.corpus);
}

Language need_language(const std::string& code) {
  auto l = parse_language(code);
  if (!l) fail(ErrorCode::InvalidArgument, "unknown language " + code);
  return *l;
}

Condition need_condition(const std::string& text) {
  auto c = parse_condition(text);
  if (!c) fail(ErrorCode::InvalidArgument, "unknown condition " + text);
  return *c;
}

BackendConfig read_backend(const std::string& path) { return backend_from_json(json::parse(read_file(path))); }

// Records carry a single (model, language, condition) cell each.
std::map<std::string, std::vector<PredictionRecord>> split_cells(const std::vector<PredictionRecord>& recs) {
  std::map<std::string, std::vector<PredictionRecord>> out;
  for (const auto& r : recs) {
    out[cell_run_id("", r.model, r.language, r.condition).substr(2)].push_back(r);
  }
  return out;
}

json matrix_json(const std::vector<std::string>& ids, const std::vector<double>& values) {
  json rows = json::object();
  const std::size_t n = ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::object();
    for (std::size_t j = 0; j < n; ++j) row[ids[j]] = values[i * n + j];
    rows[ids[i]] = row;
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Political-bias probing harness for target-oriented sentiment classification"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool dry_run = false;
  app.add_option("--config", config_path, "Config file (JSON)");
  app.add_option("--seed", seed, "Override the config's base seed");
  app.add_flag("--dry-run", dry_run, "Plan only; make no backend calls");

  // entities
  auto* ent = app.add_subcommand("entities", "Entity catalog tools");
  ent->require_subcommand(1);
  std::string ent_file, ent_out, countries, quotas = "2,2,1,3", ent_id, gen_backend;
  auto* ent_validate = ent->add_subcommand("validate", "Check an entities file");
  ent_validate->add_option("--entities", ent_file)->required();
  auto* ent_align = ent->add_subcommand("align", "Resolve parties and alignments");
  ent_align->add_option("--entities", ent_file)->required();
  ent_align->add_option("--out", ent_out)->required();
  auto* ent_sample = ent->add_subcommand("sample", "Hierarchical per-country sampling");
  ent_sample->add_option("--entities", ent_file)->required();
  ent_sample->add_option("--countries", countries, "Comma-separated ISO codes")->required();
  ent_sample->add_option("--quotas", quotas, "k1,k2,k3,k4");
  ent_sample->add_option("--out", ent_out)->required();
  auto* ent_prompt = ent->add_subcommand("fake-name-prompt", "Show the control-name request for an entity");
  ent_prompt->add_option("--entities", ent_file)->required();
  ent_prompt->add_option("--id", ent_id)->required();
  auto* ent_names = ent->add_subcommand("control-names", "Generate missing control names with a chat backend");
  ent_names->add_option("--entities", ent_file)->required();
  ent_names->add_option("--backend", gen_backend, "http_chat backend config file")->required();
  ent_names->add_option("--out", ent_out)->required();

  // corpus
  auto* cor = app.add_subcommand("corpus", "Sentence corpus tools");
  cor->require_subcommand(1);
  std::string sent_file, pivots_file, cor_out;
  bool balanced = false;
  auto* cor_validate = cor->add_subcommand("validate", "Check a sentences file");
  cor_validate->add_option("--sentences", sent_file)->required();
  cor_validate->add_flag("--balanced", balanced, "Require equal class counts per language");
  auto* cor_stats = cor->add_subcommand("stats", "Per-language counts");
  cor_stats->add_option("--sentences", sent_file)->required();
  auto* cor_restore = cor->add_subcommand("restore-pivots", "Replace translated pivot names with the placeholder");
  cor_restore->add_option("--sentences", sent_file)->required();
  cor_restore->add_option("--pivots", pivots_file);
  cor_restore->add_option("--out", cor_out)->required();

  // prompts
  auto* pr = app.add_subcommand("prompts", "Prompt factory tools");
  pr->require_subcommand(1);
  std::string pr_lang = "eng", pr_sentence, pr_target, pr_lib;
  int pr_shots = 9;
  std::uint64_t pr_seed = 0;
  auto* pr_preview = pr->add_subcommand("preview", "Print the chat messages for one query");
  pr_preview->add_option("--language", pr_lang);
  pr_preview->add_option("--shots", pr_shots);
  pr_preview->add_option("--prompt-seed", pr_seed);
  pr_preview->add_option("--prompts", pr_lib, "Prompt library JSON");
  pr_preview->add_option("--sentence", pr_sentence)->required();
  pr_preview->add_option("--target", pr_target)->required();

  // run
  auto* run = app.add_subcommand("run", "Execute one plan against a backend");
  std::string plan_file, backend_file, cache_dir, run_out, mock_params, lexicon_file;
  int concurrency = 0;
  run->add_option("--plan", plan_file)->required();
  run->add_option("--backend", backend_file, "Backend config JSON (kind http_chat|mock)")->required();
  run->add_option("--concurrency", concurrency, "Max requests in flight");
  run->add_option("--cache", cache_dir)->required();
  run->add_option("--mock-params", mock_params, "Simulator params JSON for a mock backend");
  run->add_option("--lexicon", lexicon_file);
  run->add_option("--out", run_out, "Records file (JSON Lines)")->required();

  // score
  auto* score = app.add_subcommand("score", "IC, accuracy and macro-F1 of a records file");
  std::string rec_file, rec_file2;
  score->add_option("--records", rec_file)->required();
  score->add_option("--sentences", sent_file)->required();

  // analyze
  auto* an = app.add_subcommand("analyze", "Derived analyses over records");
  std::string what;
  std::vector<std::string> sim_ids;
  std::size_t n_resamples = 1000;
  std::uint64_t boot_seed = 0;
  an->add_option("--what", what)->required()->check(
      CLI::IsMember({"ic", "profiles", "similarity", "jaccard", "compass", "tests", "compare"}));
  an->add_option("--records", rec_file)->required();
  an->add_option("--records-b", rec_file2, "Second records file (jaccard, compare)");
  an->add_option("--entities", ent_file, "Defaults to the config's entities path");
  an->add_option("--sentences", sent_file, "Defaults to the config's sentences path");
  an->add_option("--ids", sim_ids, "Entity ids for similarity");
  an->add_option("--resamples", n_resamples);
  an->add_option("--bootstrap-seed", boot_seed);

  // report
  auto* rep = app.add_subcommand("report", "Build a report bundle from records files");
  std::vector<std::string> runs;
  rep->add_option("--runs", runs, "Records files")->required();

  // run-matrix
  auto* rm = app.add_subcommand("run-matrix", "Run every model x language x condition cell of the config");
  bool parallel_cells = false;
  rm->add_flag("--parallel-cells", parallel_cells);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Synthetic records from the bias simulator");
  std::string sim_lang = "eng", sim_cond = "real", sim_model = "simulator", sim_run = "simulated";
  sim->add_option("--entities", ent_file)->required();
  sim->add_option("--sentences", sent_file)->required();
  sim->add_option("--params", mock_params)->required();
  sim->add_option("--language", sim_lang);
  sim->add_option("--condition", sim_cond);
  sim->add_option("--model", sim_model);
  sim->add_option("--run-id", sim_run);
  sim->add_option("--out", run_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ent_validate) {
      auto load = load_entities(ent_file);
      auto diags = load.diagnostics;
      auto more = validate_entities(load.entities);
      diags.insert(diags.end(), more.begin(), more.end());
      return print_diagnostics(diags);
    }
    if (*ent_align) {
      auto ents = read_entities(ent_file);
      const auto diags = align_entities(ents);
      save_entities(ent_out, ents);
      return print_diagnostics(diags);
    }
    if (*ent_sample) {
      std::vector<std::string> list;
      std::string item;
      for (char c : countries + ",") {
        if (c == ',') {
          if (!item.empty()) list.push_back(item);
          item.clear();
        } else {
          item += c;
        }
      }
      auto result = hierarchical_sample(read_entities(ent_file), list, parse_quotas(quotas));
      save_entities(ent_out, result.panel);
      print_diagnostics(result.warnings);
      return kOk;
    }
    if (*ent_prompt) {
      for (const auto& e : read_entities(ent_file)) {
        if (e.id != ent_id) continue;
        json msgs = json::parse(canonical_messages(build_fake_name_request(e, {})));
        std::cout << msgs.dump(2) << "\n";
        return kOk;
      }
      fail(ErrorCode::InvalidArgument, "no entity with id " + ent_id);
    }
    if (*ent_names) {
      auto ents = read_entities(ent_file);
      const BackendConfig bc = read_backend(gen_backend);
      if (bc.kind != BackendKind::http_chat) fail(ErrorCode::InvalidArgument, "control-names needs an http_chat backend");
      auto backend = make_backend(bc);
      auto diags = generate_control_names(ents, [&](const ChatMessages& msgs) {
        const auto res = backend->complete(ChatRequest{nullptr, nullptr, msgs});
        if (res.status == ChatResult::Status::fatal) fail(ErrorCode::FatalAuth, res.error);
        return res.status == ChatResult::Status::ok ? res.text : std::string{};
      });
      save_entities(ent_out, ents);
      print_diagnostics(diags);
      return kOk;
    }

    if (*cor_validate) {
      auto load = load_corpus(sent_file);
      auto diags = load.diagnostics;
      auto more = validate_corpus(load.corpus, balanced);
      diags.insert(diags.end(), more.begin(), more.end());
      return print_diagnostics(diags);
    }
    if (*cor_stats) {
      json out = json::array();
      for (const auto& s : corpus_stats(read_corpus(sent_file))) {
        out.push_back({{"language", to_string(s.language)},
                       {"templates", s.templates},
                       {"negative", s.per_class[0]},
                       {"neutral", s.per_class[1]},
                       {"positive", s.per_class[2]},
                       {"reviewed", s.reviewed}});
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }
    if (*cor_restore) {
      const PivotTable pivots = pivots_file.empty() ? PivotTable::defaults() : load_pivot_table(pivots_file);
      auto outcome = restore_corpus(read_corpus(sent_file), pivots);
      save_corpus(cor_out, outcome.restored);
      print_diagnostics(outcome.manual_review);
      return kOk;
    }

    if (*pr_preview) {
      const PromptLibrary lib = pr_lib.empty() ? default_prompt_library() : load_prompt_library(pr_lib);
      const PromptSpec spec = make_prompt_spec(lib, need_language(pr_lang), pr_shots, pr_seed);
      if (auto problems = validate_prompt_spec(spec); !problems.empty()) fail(ErrorCode::InvalidArgument, problems.front());
      const auto msgs = build_prompt(spec, pr_sentence, pr_target);
      std::cout << json::parse(canonical_messages(msgs)).dump(2) << "\n";
      std::cout << "prompt_hash " << prompt_hash(msgs) << "\n";
      return kOk;
    }

    if (*run) {
      const RunPlan plan = materialize(PlanFile::load(plan_file));
      BackendConfig bc = read_backend(backend_file);
      if (!mock_params.empty()) bc.sim = load_params(mock_params);
      if (concurrency > 0) bc.max_in_flight = concurrency;
      ExecuteOptions eo = options_for(bc);
      const Lexicon lex = lexicon_file.empty() ? default_lexicon() : load_lexicon(lexicon_file);
      eo.lexicon = &lex;
      if (dry_run) {
        std::cout << json{{"run_id", plan.run_id}, {"items", plan.size()}}.dump() << "\n";
        return kOk;
      }
      auto backend = make_backend(bc);
      ResponseCache cache(cache_dir);
      auto result = execute(plan, *backend, &cache, eo);
      write_file_atomic(run_out, report::records_jsonl(result.records));
      std::cout << result.stats.to_json().dump() << "\n";
      return kOk;
    }

    if (*score) {
      const Corpus corpus = read_corpus(sent_file);
      json out = json::array();
      for (const auto& [cell, recs] : split_cells(load_records(rec_file))) {
        const auto ic = inconsistency(recs);
        const auto cls = accuracy_and_macro_f1(recs, corpus);
        json j = ic.to_json();
        j.erase("per_sentence_entropy");
        j["classification"] = cls.to_json();
        out.push_back(j);
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (*an) {
      const auto recs = load_records(rec_file);
      const BootstrapOptions boot{n_resamples, boot_seed, 0.95};
      if (!config_path.empty() && (ent_file.empty() || sent_file.empty())) {
        const auto cfg = load_config(config_path, seed);
        if (ent_file.empty()) ent_file = cfg.paths.entities.string();
        if (sent_file.empty()) sent_file = cfg.paths.sentences.string();
      }
      auto need_panel = [&] {
        if (ent_file.empty()) fail(ErrorCode::InvalidArgument, "--entities is required for --what " + what);
        return read_entities(ent_file);
      };
      json out;
      if (what == "ic") {
        out = json::array();
        for (const auto& [cell, rs] : split_cells(recs)) out.push_back(inconsistency(rs).to_json());
      } else if (what == "profiles") {
        const auto panel = need_panel();
        out = json::array();
        for (const auto& [cell, rs] : split_cells(recs)) out.push_back(alignment_profile(rs, panel, boot, cell).to_json());
      } else if (what == "tests") {
        const auto panel = need_panel();
        out = json::object();
        for (const auto& [cell, rs] : split_cells(recs)) out[cell] = pairwise_alignment_tests(rs, panel).to_json();
      } else if (what == "compass") {
        const auto panel = need_panel();
        out = json::object();
        for (const auto& [cell, rs] : split_cells(recs)) out[cell] = compass_grid(panel, entity_means(rs)).to_json();
      } else if (what == "similarity") {
        const auto m = similarity_matrix(sim_ids, recs, true);
        out = matrix_json(m.entity_ids, m.values);
      } else if (what == "jaccard") {
        if (rec_file2.empty()) fail(ErrorCode::InvalidArgument, "--records-b is required for jaccard");
        const auto res = cross_language_jaccard(recs, load_records(rec_file2));
        out = {{"mean", res.mean}, {"per_entity", res.per_entity}};
      } else if (what == "compare") {
        if (rec_file2.empty() || sent_file.empty()) {
          fail(ErrorCode::InvalidArgument, "--records-b and --sentences are required for compare");
        }
        const auto panel = need_panel();
        const Corpus corpus = read_corpus(sent_file);
        const auto a = summarize_run(recs, corpus, panel, boot);
        const auto b = summarize_run(load_records(rec_file2), corpus, panel, boot);
        out = a.condition == Condition::control ? compare_runs(b, a).to_json() : compare_runs(a, b).to_json();
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (*rep || *rm) {
      if (config_path.empty()) {
        std::cerr << "--config is required\n";
        return kConfigError;
      }
      auto load = validate_config(config_path, seed);
      if (!load.config) {
        print_diagnostics(load.diagnostics);
        return kConfigError;
      }
      const ProbeConfig& cfg = *load.config;
      if (*rm) {
        MatrixOptions mo;
        mo.parallel_cells = parallel_cells;
        mo.dry_run = dry_run;
        const auto outcome = run_matrix(cfg, mo);
        json cells = json::array();
        for (const auto& c : outcome.cells) {
          json j = {{"cell", c.cell_id}, {"status", to_string(c.status)}, {"items", c.items}};
          if (!c.error.empty()) j["error"] = c.error;
          cells.push_back(j);
        }
        std::cout << json{{"cells", cells}, {"bundle", outcome.bundle_dir.string()}}.dump(2) << "\n";
        return outcome.exit_code == 0 ? kOk : kCellFailure;
      }
      const PipelineContext ctx = load_context(cfg);
      report::ReportInputs in;
      in.run_id = cfg.run_id;
      in.config_hash = cfg.hash;
      in.timestamp = cfg.timestamp;
      in.panel = &ctx.panel;
      in.corpus = &ctx.corpus;
      in.bootstrap = cfg.bootstrap;
      in.similarity_entities = cfg.similarity_entities;
      for (const auto& path : runs) {
        for (auto& [cell, rs] : split_cells(load_records(path))) {
          report::CellOutcome c;
          c.cell_id = cell_run_id(cfg.run_id, rs[0].model, rs[0].language, rs[0].condition);
          c.model = rs[0].model;
          c.language = rs[0].language;
          c.condition = rs[0].condition;
          c.ok = true;
          c.records = std::move(rs);
          c.records_sha256 = sha256_hex(report::records_jsonl(c.records));
          in.cells.push_back(std::move(c));
        }
      }
      const auto dir = report::write_bundle(cfg.paths.report_dir, report::build_report(in));
      std::cout << dir.string() << "\n";
      return kOk;
    }

    if (*sim) {
      const auto panel = read_entities(ent_file);
      const Corpus corpus = read_corpus(sent_file);
      const Language lang = need_language(sim_lang);
      std::vector<SentenceTemplate> slice;
      for (const auto* t : corpus.slice(lang)) slice.push_back(*t);
      SimulatorParams params = load_params(mock_params);
      if (seed) params.seed = *seed;
      const auto recs = simulate_run(slice, panel, params, need_condition(sim_cond), sim_run, sim_model);
      write_file_atomic(run_out, report::records_jsonl(recs));
      std::cout << json{{"records", recs.size()}}.dump() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    log::error(e.what(), {{"code", to_string(e.code())}});
    return kConfigError;
  } catch (const std::exception& e) {
    log::error(e.what());
    return kConfigError;
  }
  return kOk;
}
