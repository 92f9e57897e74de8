#include "probe/gateway/cache.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/log.hpp"

#include <mutex>
#include <vector>

namespace probe {

namespace {

void encode_into(std::string& out, std::string_view s) {
  for (char c : s) {
    if (c == '%') out += "%25";
    else if (c == '/') out += "%2F";
    else out += c;
  }
}

std::string decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    const auto code = s.substr(i + 1, 2);
    if (code == "25") out += '%';
    else if (code == "2F") out += '/';
    else fail(ErrorCode::ParseError, "cache key has a bad escape");
    i += 2;
  }
  return out;
}

}  // namespace

std::string cache_key(const CacheCoords& c) {
  std::string key;
  const std::string_view parts[] = {c.model,    to_string(c.language), to_string(c.condition), c.sentence_id,
                                    to_string(c.variant), c.entity_id, c.prompt_hash};
  bool first = true;
  for (auto p : parts) {
    if (!first) key += '/';
    first = false;
    encode_into(key, p);
  }
  return key;
}

CacheCoords parse_cache_key(std::string_view key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto slash = key.find('/', start);
    parts.push_back(decode(key.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start)));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  if (parts.size() != 7) fail(ErrorCode::ParseError, "cache key must have 7 components");
  auto lang = parse_language(parts[1]);
  auto cond = parse_condition(parts[2]);
  auto var = parse_variant(parts[4]);
  if (!lang || !cond || !var) fail(ErrorCode::ParseError, "cache key has an unknown enum value");
  return CacheCoords{parts[0], *lang, *cond, parts[3], *var, parts[5], parts[6]};
}

ResponseCache::ResponseCache(std::filesystem::path dir) : file_(std::move(dir) / "cache.jsonl") {
  std::filesystem::create_directories(file_.parent_path());
  load();
  out_.open(file_, std::ios::binary | std::ios::app);
  if (!out_) fail(ErrorCode::Io, "cannot open cache " + file_.string());
}

void ResponseCache::load() {
  if (!std::filesystem::exists(file_)) return;
  const std::string content = read_file(file_);
  std::vector<std::string> order;
  std::size_t lines = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    const bool terminated = nl != std::string::npos;
    if (!terminated) nl = content.size();
    std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    ++lines;
    if (!terminated) {
      ++dropped_;  // torn final write
      continue;
    }
    try {
      const json j = json::parse(line);
      std::string key = j.at("key").get<std::string>();
      PredictionRecord rec = record_from_json(j.at("record"));
      if (entries_.insert_or_assign(key, std::move(rec)).second) order.push_back(std::move(key));
    } catch (const std::exception&) {
      ++dropped_;
    }
  }
  const bool duplicates = entries_.size() + dropped_ != lines;
  if (dropped_ > 0 || duplicates) {
    std::string compacted;
    for (const auto& key : order) {
      compacted += json{{"key", key}, {"record", to_json(entries_.at(key))}}.dump();
      compacted += '\n';
    }
    write_file_atomic(file_, compacted);
    if (dropped_ > 0) log::warn("cache: dropped damaged lines", {{"file", file_.string()}, {"count", dropped_}});
  }
}

std::optional<PredictionRecord> ResponseCache::get(const std::string& key) const {
  std::shared_lock lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::put(const std::string& key, const PredictionRecord& record) {
  std::unique_lock lock(mu_);
  out_ << json{{"key", key}, {"record", to_json(record)}}.dump() << '\n';
  out_.flush();
  if (!out_) fail(ErrorCode::Io, "cache write failed: " + file_.string());
  entries_.insert_or_assign(key, record);
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

}  // namespace probe
