#pragma once

#include "probe/cli/config.hpp"
#include "probe/corpus/corpus.hpp"
#include "probe/gateway/backend.hpp"
#include "probe/gateway/parse.hpp"
#include "probe/prompt/prompt.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace probe {

// Inputs shared by every cell of a matrix.
struct PipelineContext {
  std::vector<PoliticalEntity> panel;
  Corpus corpus;
  PromptLibrary prompts;
  Lexicon lexicon;
};

// Loads, aligns and (optionally) samples entities, loads the corpus, prompt
// library and lexicon. Throws InvalidArgument listing validation problems.
PipelineContext load_context(const ProbeConfig& cfg);

struct MatrixOptions {
  bool parallel_cells = false;
  bool dry_run = false;
  // Stop the whole matrix (ErrorCode::Aborted) after this many backend calls;
  // 0 = never. Used to simulate a killed run.
  std::size_t abort_after_calls = 0;
  std::function<std::unique_ptr<ChatBackend>(const BackendConfig&)> backend_factory;
  std::function<void(std::chrono::duration<double>)> sleep;
};

enum class CellStatus { ok, cached, failed, planned };
std::string_view to_string(CellStatus s);

struct CellReport {
  std::string cell_id;
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  CellStatus status = CellStatus::failed;
  std::size_t items = 0;
  std::string error;
  json stats = json::object();
};

struct MatrixOutcome {
  int exit_code = 0;  // 0 all cells ok, 1 some cell failed
  std::vector<CellReport> cells;
  std::filesystem::path bundle_dir;
};

std::filesystem::path records_path(const ProbeConfig& cfg, const std::string& cell_id);

// plan -> execute -> score -> analyze -> report for every model x language x
// condition cell. A failing cell is reported and the others still run.
MatrixOutcome run_matrix(const ProbeConfig& cfg, const MatrixOptions& opts = {});

}  // namespace probe
