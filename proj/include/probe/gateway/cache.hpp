#pragma once

#include "probe/gateway/record.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace probe {

struct CacheCoords {
  std::string model;
  Language language = Language::eng;
  Condition condition = Condition::real;
  std::string sentence_id;
  Variant variant = Variant::male;
  std::string entity_id;
  std::string prompt_hash;

  bool operator==(const CacheCoords&) const = default;
};

// '/'-joined coordinates; '%' and '/' inside a component are percent-encoded
// so the key parses back unambiguously.
std::string cache_key(const CacheCoords& c);
CacheCoords parse_cache_key(std::string_view key);

// Append-only JSON Lines store at <dir>/cache.jsonl. Loading keeps the last
// record per key and rewrites the file when it held duplicates or damaged
// lines. One writer, many readers.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<PredictionRecord> get(const std::string& key) const;
  void put(const std::string& key, const PredictionRecord& record);
  std::size_t size() const;
  std::size_t dropped_lines() const { return dropped_; }
  const std::filesystem::path& file() const { return file_; }

 private:
  void load();

  std::filesystem::path file_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, PredictionRecord> entries_;
  std::ofstream out_;
  std::size_t dropped_ = 0;
};

}  // namespace probe
