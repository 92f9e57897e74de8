#include "probe/gateway/executor.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"
#include "probe/core/log.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace probe {

ExecuteOptions options_for(const BackendConfig& c) {
  ExecuteOptions o;
  o.max_in_flight = c.max_in_flight;
  o.max_retries = c.max_retries;
  o.backoff_base_s = c.backoff_base_s;
  o.backoff_cap_s = c.backoff_cap_s;
  o.jitter_seed = fnv1a64(c.name);
  return o;
}

json ExecuteStats::to_json() const {
  return {{"items", items},     {"cache_hits", cache_hits}, {"backend_calls", backend_calls},
          {"retries", retries}, {"invalid", invalid},       {"failed", failed}};
}

double backoff_delay(const ExecuteOptions& o, std::size_t item, int attempt) {
  const double raw = std::min(o.backoff_cap_s, o.backoff_base_s * std::ldexp(1.0, std::min(attempt, 60)));
  const double u = to_unit_interval(hash_combine(hash_combine(o.jitter_seed, item), static_cast<std::uint64_t>(attempt)));
  return raw * (0.5 + 0.5 * u);
}

std::string item_cache_key(const RunPlan& plan, const PlanItem& item, const std::string& prompt_hash) {
  return cache_key(CacheCoords{plan.model, plan.language, plan.condition, plan.sentence_of(item).id, item.variant,
                               plan.entity_of(item).id, prompt_hash});
}

ExecuteResult execute(const RunPlan& plan, ChatBackend& backend, ResponseCache* cache, const ExecuteOptions& opts) {
  const Lexicon& lexicon = opts.lexicon ? *opts.lexicon : default_lexicon();
  std::function<void(std::chrono::duration<double>)> sleep = opts.sleep;
  if (!sleep) sleep = [](std::chrono::duration<double> d) { std::this_thread::sleep_for(d); };

  ExecuteResult result;
  result.records.resize(plan.size());
  result.stats.items = plan.size();

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> calls{0}, hits{0}, retries{0}, failed{0};
  std::mutex err_mu;
  std::mutex cb_mu;
  std::exception_ptr first_error;
  std::string fatal_note;

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) return;
      try {
        const PlanItem& item = plan.items[i];
        ChatRequest req{&plan, &item, plan.messages(item)};
        const std::string key = item_cache_key(plan, item, prompt_hash(req.messages));

        PredictionRecord rec;
        bool from_cache = false;
        if (cache) {
          if (auto hit = cache->get(key)) {
            rec = std::move(*hit);
            rec.cached = true;
            from_cache = true;
            ++hits;
          }
        }
        if (!from_cache) {
          rec.run_id = plan.run_id;
          rec.model = plan.model;
          rec.language = plan.language;
          rec.sentence_id = plan.sentence_of(item).id;
          rec.variant = item.variant;
          rec.entity_id = plan.entity_of(item).id;
          rec.condition = plan.condition;

          ChatResult res;
          for (int attempt = 0;; ++attempt) {
            if (opts.abort_after_calls && calls.load() >= opts.abort_after_calls) {
              stop = true;
              return;
            }
            ++calls;
            res = backend.complete(req);
            if (res.status != ChatResult::Status::transient || attempt >= opts.max_retries) break;
            ++retries;
            sleep(std::chrono::duration<double>(backoff_delay(opts, i, attempt)));
          }
          if (res.status == ChatResult::Status::fatal) {
            std::lock_guard lock(err_mu);
            if (fatal_note.empty()) fatal_note = res.error;
            stop = true;
            return;
          }
          rec.latency_ms = res.latency_ms;
          if (res.status == ChatResult::Status::ok) {
            rec.raw_text = res.text;
            rec.label = parse_sentiment(res.text, plan.language, lexicon);
            if (cache) cache->put(key, rec);
          } else {
            rec.raw_text = "error: " + res.error;
            rec.label = Label::invalid;
            ++failed;
          }
        }
        if (opts.on_record) {
          std::lock_guard lock(cb_mu);
          opts.on_record(rec);
        }
        result.records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        stop = true;
        return;
      }
    }
  };

  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opts.max_in_flight)), plan.size()));
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  result.stats.backend_calls = calls.load();
  result.stats.cache_hits = hits.load();
  result.stats.retries = retries.load();
  result.stats.failed = failed.load();

  if (first_error) std::rethrow_exception(first_error);
  if (!fatal_note.empty()) {
    log::error("aborting run on authentication failure", {{"run_id", plan.run_id}, {"note", fatal_note}});
    fail(ErrorCode::FatalAuth, fatal_note);
  }
  if (stop.load()) fail(ErrorCode::Aborted, "run stopped after " + std::to_string(result.stats.backend_calls) + " backend calls");

  for (const auto& r : result.records) result.stats.invalid += r.label == Label::invalid;
  return result;
}

}  // namespace probe
