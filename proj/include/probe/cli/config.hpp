#pragma once

#include "probe/catalog/entity.hpp"
#include "probe/catalog/sampling.hpp"
#include "probe/gateway/backend.hpp"
#include "probe/gateway/record.hpp"
#include "probe/metrics/profile.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace probe {

struct ConfigPaths {
  std::filesystem::path entities;
  std::filesystem::path sentences;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> pivots;
  std::optional<std::filesystem::path> prompts;
  std::filesystem::path cache_dir;
  std::filesystem::path report_dir;
};

struct SamplingConfig {
  std::vector<std::string> countries;
  SamplingQuotas quotas;
};

struct ProbeConfig {
  std::filesystem::path source;  // the config file
  std::string run_id;
  std::uint64_t seed = 0;
  ConfigPaths paths;  // resolved against the config file's directory
  std::vector<BackendConfig> backends;
  std::vector<std::string> models;  // backend names
  std::vector<Language> languages;
  std::vector<Condition> conditions;
  std::optional<SamplingConfig> sampling;
  BootstrapOptions bootstrap;
  int shots = 9;
  std::uint64_t prompt_seed = 0;
  std::vector<std::string> similarity_entities;
  std::optional<std::string> timestamp;
  std::string hash;  // SHA-256 of the canonical form

  const BackendConfig& backend(const std::string& name) const;
};

struct ConfigLoad {
  std::optional<ProbeConfig> config;
  std::vector<Diagnostic> diagnostics;  // every problem found, not just the first
};

// Keys under paths.* are relative to the config file. A syntax error yields a
// single ParseError diagnostic with line and column. seed_override replaces
// the top-level seed before derived seeds and the hash are computed.
ConfigLoad validate_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = std::nullopt);

// Throws ParseError for syntax errors and InvalidArgument listing all other
// diagnostics.
ProbeConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = std::nullopt);

// Sorted-key serialization with output locations (cache_dir, report_dir)
// left out, so formatting and key order never change the hash.
std::string canonical_config(const json& doc);
std::string config_hash(const json& doc);

}  // namespace probe
