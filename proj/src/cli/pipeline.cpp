#include "probe/cli/pipeline.hpp"

#include "probe/catalog/sampling.hpp"
#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"
#include "probe/core/log.hpp"
#include "probe/gateway/cache.hpp"
#include "probe/gateway/executor.hpp"
#include "probe/gateway/plan.hpp"
#include "probe/report/bundle.hpp"

#include <atomic>
#include <cstdlib>
#include <future>
#include <mutex>

namespace probe {

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::cached: return "cached";
    case CellStatus::failed: return "failed";
    case CellStatus::planned: return "planned";
  }
  return "?";
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags, std::size_t limit = 10) {
  std::string msg;
  for (std::size_t i = 0; i < diags.size() && i < limit; ++i) {
    msg += "\n  " + diags[i].code + " " + diags[i].subject + ": " + diags[i].message;
  }
  if (diags.size() > limit) msg += "\n  ... " + std::to_string(diags.size() - limit) + " more";
  return msg;
}

// Counts calls across every cell and stops the matrix once the budget is spent.
class BudgetedBackend final : public ChatBackend {
 public:
  BudgetedBackend(std::unique_ptr<ChatBackend> inner, std::atomic<std::size_t>& used, std::size_t budget)
      : inner_(std::move(inner)), used_(used), budget_(budget) {}

  ChatResult complete(const ChatRequest& r) override {
    if (budget_ && used_.fetch_add(1) >= budget_) fail(ErrorCode::Aborted, "call budget exhausted");
    return inner_->complete(r);
  }
  std::size_t calls() const override { return inner_->calls(); }

 private:
  std::unique_ptr<ChatBackend> inner_;
  std::atomic<std::size_t>& used_;
  std::size_t budget_;
};

}  // namespace

PipelineContext load_context(const ProbeConfig& cfg) {
  PipelineContext ctx;
  auto ents = load_entities(cfg.paths.entities);
  if (!ents.diagnostics.empty()) fail(ErrorCode::InvalidArgument, "entities file:" + summarize(ents.diagnostics));
  for (const auto& d : align_entities(ents.entities)) log::warn("entity alignment", {{"subject", d.subject}, {"message", d.message}});
  if (auto problems = validate_entities(ents.entities); !problems.empty()) {
    fail(ErrorCode::InvalidArgument, "entities:" + summarize(problems));
  }
  if (cfg.sampling) {
    auto sample = hierarchical_sample(ents.entities, cfg.sampling->countries, cfg.sampling->quotas);
    for (const auto& w : sample.warnings) log::warn("sampling", {{"subject", w.subject}, {"message", w.message}});
    ctx.panel = std::move(sample.panel);
  } else {
    ctx.panel = std::move(ents.entities);
  }

  auto corpus = load_corpus(cfg.paths.sentences);
  if (!corpus.diagnostics.empty()) fail(ErrorCode::InvalidArgument, "sentences file:" + summarize(corpus.diagnostics));
  if (auto problems = validate_corpus(corpus.corpus, false); !problems.empty()) {
    fail(ErrorCode::InvalidArgument, "sentences:" + summarize(problems));
  }
  ctx.corpus = std::move(corpus.corpus);
  ctx.prompts = cfg.paths.prompts ? load_prompt_library(*cfg.paths.prompts) : default_prompt_library();
  ctx.lexicon = cfg.paths.lexicon ? load_lexicon(*cfg.paths.lexicon) : default_lexicon();
  return ctx;
}

std::filesystem::path records_path(const ProbeConfig& cfg, const std::string& cell_id) {
  return cfg.paths.cache_dir / "runs" / report::slug(cfg.run_id) / (report::slug(cell_id) + ".jsonl");
}

MatrixOutcome run_matrix(const ProbeConfig& cfg, const MatrixOptions& opts) {
  const PipelineContext ctx = load_context(cfg);

  struct Cell {
    CellReport report;
    report::CellOutcome outcome;
  };
  std::vector<Cell> cells;
  for (const auto& model : cfg.models) {
    for (Language lang : cfg.languages) {
      for (Condition cond : cfg.conditions) {
        Cell c;
        c.report.cell_id = cell_run_id(cfg.run_id, model, lang, cond);
        c.report.model = model;
        c.report.language = lang;
        c.report.condition = cond;
        c.outcome.cell_id = c.report.cell_id;
        c.outcome.model = model;
        c.outcome.language = lang;
        c.outcome.condition = cond;
        cells.push_back(std::move(c));
      }
    }
  }

  std::unique_ptr<ResponseCache> cache;
  if (!opts.dry_run) cache = std::make_unique<ResponseCache>(cfg.paths.cache_dir);
  std::atomic<std::size_t> calls_used{0};

  auto run_cell = [&](Cell& c) {
    try {
      std::vector<SentenceTemplate> slice;
      for (const auto* t : ctx.corpus.slice(c.report.language)) slice.push_back(*t);
      const PromptSpec spec = make_prompt_spec(ctx.prompts, c.report.language, cfg.shots, cfg.prompt_seed);
      if (auto problems = validate_prompt_spec(spec); !problems.empty()) fail(ErrorCode::InvalidArgument, problems.front());
      const RunPlan plan = enumerate_plan(slice, ctx.panel, spec, c.report.condition, c.report.cell_id, c.report.model);
      c.report.items = plan.size();
      if (opts.dry_run) {
        c.report.status = CellStatus::planned;
        return;
      }
      const BackendConfig& bc = cfg.backend(c.report.model);
      auto inner = opts.backend_factory ? opts.backend_factory(bc) : make_backend(bc);
      BudgetedBackend backend(std::move(inner), calls_used, opts.abort_after_calls);
      ExecuteOptions eo = options_for(bc);
      eo.lexicon = &ctx.lexicon;
      if (opts.sleep) eo.sleep = opts.sleep;
      auto result = execute(plan, backend, cache.get(), eo);

      const std::string text = report::records_jsonl(result.records);
      write_file_atomic(records_path(cfg, c.report.cell_id), text);
      c.outcome.records = std::move(result.records);
      c.outcome.records_sha256 = sha256_hex(text);
      c.outcome.ok = true;
      c.report.stats = result.stats.to_json();
      const bool all_cached = result.stats.backend_calls == 0 && result.stats.cache_hits == result.stats.items;
      c.report.status = all_cached ? CellStatus::cached : CellStatus::ok;
      log::info("cell finished", {{"cell", c.report.cell_id}, {"status", to_string(c.report.status)}, {"stats", c.report.stats}});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Aborted) throw;
      c.report.status = CellStatus::failed;
      c.report.error = e.what();
      c.outcome.ok = false;
      c.outcome.error = e.what();
      log::error("cell failed", {{"cell", c.report.cell_id}, {"error", e.what()}});
    } catch (const std::exception& e) {
      c.report.status = CellStatus::failed;
      c.report.error = e.what();
      c.outcome.error = e.what();
      log::error("cell failed", {{"cell", c.report.cell_id}, {"error", e.what()}});
    }
  };

  if (opts.parallel_cells && !opts.dry_run) {
    std::vector<std::future<void>> futures;
    for (auto& c : cells) futures.push_back(std::async(std::launch::async, [&run_cell, &c] { run_cell(c); }));
    std::exception_ptr abort;
    for (auto& f : futures) {
      try {
        f.get();
      } catch (...) {
        if (!abort) abort = std::current_exception();
      }
    }
    if (abort) std::rethrow_exception(abort);
  } else {
    for (auto& c : cells) run_cell(c);
  }

  MatrixOutcome out;
  for (const auto& c : cells) {
    out.cells.push_back(c.report);
    if (c.report.status == CellStatus::failed) out.exit_code = 1;
  }
  if (opts.dry_run) return out;

  report::ReportInputs in;
  in.run_id = cfg.run_id;
  in.config_hash = cfg.hash;
  in.timestamp = cfg.timestamp;
  if (!in.timestamp) {
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) in.timestamp = std::string(sde);
  }
  in.panel = &ctx.panel;
  in.corpus = &ctx.corpus;
  in.bootstrap = cfg.bootstrap;
  in.similarity_entities = cfg.similarity_entities;
  for (auto& c : cells) in.cells.push_back(std::move(c.outcome));
  out.bundle_dir = report::write_bundle(cfg.paths.report_dir, report::build_report(in));

  json status = json::array();
  for (const auto& c : out.cells) {
    json j = {{"cell", c.cell_id}, {"status", to_string(c.status)}, {"items", c.items}, {"stats", c.stats}};
    if (!c.error.empty()) j["error"] = c.error;
    status.push_back(j);
  }
  write_file_atomic(cfg.paths.report_dir / "run-matrix-status.json",
                    json{{"run_id", cfg.run_id}, {"cells", status}}.dump(2) + "\n");
  return out;
}

}  // namespace probe
