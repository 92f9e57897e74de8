#pragma once

#include "probe/gateway/backend.hpp"
#include "probe/gateway/cache.hpp"
#include "probe/gateway/parse.hpp"
#include "probe/gateway/plan.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

namespace probe {

struct ExecuteOptions {
  int max_in_flight = 8;
  int max_retries = 5;
  double backoff_base_s = 1.0;
  double backoff_cap_s = 60.0;
  std::uint64_t jitter_seed = 0;
  const Lexicon* lexicon = nullptr;  // default_lexicon() when null
  std::function<void(std::chrono::duration<double>)> sleep;  // this_thread::sleep_for when empty
  // Stop with ErrorCode::Aborted once this many backend calls have been made
  // (0 = never). Lets tests simulate a killed run.
  std::size_t abort_after_calls = 0;
  // Invoked for every finished record, from worker threads, serialized.
  std::function<void(const PredictionRecord&)> on_record;
};

ExecuteOptions options_for(const BackendConfig& c);

struct ExecuteStats {
  std::size_t items = 0;
  std::size_t cache_hits = 0;
  std::size_t backend_calls = 0;
  std::size_t retries = 0;
  std::size_t invalid = 0;
  std::size_t failed = 0;  // invalid because the backend never answered

  json to_json() const;
};

struct ExecuteResult {
  std::vector<PredictionRecord> records;  // plan order
  ExecuteStats stats;
};

// Delay before retry number `attempt` (0-based): min(cap, base * 2^attempt)
// scaled by a seeded jitter factor in [0.5, 1).
double backoff_delay(const ExecuteOptions& o, std::size_t item, int attempt);

std::string item_cache_key(const RunPlan& plan, const PlanItem& item, const std::string& prompt_hash);

// One record per plan item. Cache hits skip the backend; answered requests are
// cached as soon as they complete, so an interrupted run resumes where it
// stopped. Throws FatalAuth on 401/403 after in-flight work has drained.
ExecuteResult execute(const RunPlan& plan, ChatBackend& backend, ResponseCache* cache, const ExecuteOptions& opts = {});

}  // namespace probe
