#pragma once

#include "probe/catalog/entity.hpp"
#include "probe/corpus/corpus.hpp"
#include "probe/gateway/record.hpp"
#include "probe/metrics/profile.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace probe::report {

struct CellOutcome {
  std::string cell_id;
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  bool ok = false;
  std::string error;
  std::vector<PredictionRecord> records;
  std::string records_sha256;
};

struct ReportInputs {
  std::string run_id;
  std::string config_hash;
  std::optional<std::string> timestamp;
  std::vector<CellOutcome> cells;
  const std::vector<PoliticalEntity>* panel = nullptr;
  const Corpus* corpus = nullptr;
  BootstrapOptions bootstrap;
  std::vector<std::string> similarity_entities;
};

struct ReportBundle {
  std::string run_id;
  std::map<std::string, std::string> files;  // path relative to the bundle root
  json manifest;
};

// Filesystem-safe form of a cell or model name.
std::string slug(std::string_view s);

// Serialized records file content; the cached flag is cleared so that a
// resumed run stores the same bytes as a fresh one.
std::string records_jsonl(const std::vector<PredictionRecord>& records);

// Pure function of its inputs: derives every table and figure from the cell
// records.
ReportBundle build_report(const ReportInputs& in);

// Writes <report_dir>/<run_id>/{tables,figures,summary.md,manifest.json},
// replacing an earlier bundle of the same run.
std::filesystem::path write_bundle(const std::filesystem::path& report_dir, const ReportBundle& bundle);

}  // namespace probe::report
