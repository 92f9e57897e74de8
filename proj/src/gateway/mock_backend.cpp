#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"
#include "probe/gateway/backend.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>

namespace probe {

std::vector<std::string> validate_backend(const BackendConfig& c) {
  std::vector<std::string> problems;
  if (c.name.empty()) problems.push_back("backend name is empty");
  if (c.temperature != 0.0) problems.push_back("temperature must be 0.0");
  if (c.max_in_flight < 1) problems.push_back("max_in_flight must be positive");
  if (c.max_retries < 0) problems.push_back("max_retries must be non-negative");
  if (c.timeout_s <= 0) problems.push_back("timeout must be positive");
  if (c.backoff_base_s < 0 || c.backoff_cap_s < c.backoff_base_s) problems.push_back("backoff needs 0 <= base <= cap");
  if (c.kind == BackendKind::http_chat) {
    if (c.base_url.empty()) problems.push_back("http_chat backend needs base_url");
    if (c.model_name.empty()) problems.push_back("http_chat backend needs model_name");
  } else {
    for (auto& p : validate_params(c.sim)) problems.push_back("mock: " + p);
  }
  return problems;
}

BackendConfig backend_from_json(const json& j) {
  BackendConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    const auto kind = j.value("kind", std::string{"mock"});
    if (kind == "http_chat") c.kind = BackendKind::http_chat;
    else if (kind == "mock") c.kind = BackendKind::mock;
    else fail(ErrorCode::ParseError, "backend " + c.name + ": unknown kind " + kind);
    c.base_url = j.value("base_url", std::string{});
    c.api_key_env_var = j.value("api_key_env_var", std::string{});
    c.model_name = j.value("model_name", std::string{});
    c.temperature = j.value("temperature", 0.0);
    c.timeout_s = j.value("timeout", c.timeout_s);
    c.max_retries = j.value("max_retries", c.max_retries);
    if (j.contains("backoff")) {
      c.backoff_base_s = j["backoff"].value("base", c.backoff_base_s);
      c.backoff_cap_s = j["backoff"].value("cap", c.backoff_cap_s);
    }
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    if (j.contains("mock")) {
      const auto& m = j["mock"];
      const auto mode = m.value("mode", std::string{"simulator"});
      if (mode == "simulator") c.mock_mode = MockMode::simulator;
      else if (mode == "uniform") c.mock_mode = MockMode::uniform;
      else fail(ErrorCode::ParseError, "backend " + c.name + ": unknown mock mode " + mode);
      c.sim = params_from_json(m);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("backend: ") + e.what());
  }
  return c;
}

json to_json(const BackendConfig& c) {
  json j = {{"name", c.name},
            {"kind", c.kind == BackendKind::http_chat ? "http_chat" : "mock"},
            {"temperature", c.temperature},
            {"timeout", c.timeout_s},
            {"max_retries", c.max_retries},
            {"backoff", {{"base", c.backoff_base_s}, {"cap", c.backoff_cap_s}}},
            {"max_in_flight", c.max_in_flight}};
  if (c.kind == BackendKind::http_chat) {
    j["base_url"] = c.base_url;
    j["api_key_env_var"] = c.api_key_env_var;
    j["model_name"] = c.model_name;
  } else {
    json m = to_json(c.sim);
    m["mode"] = c.mock_mode == MockMode::uniform ? "uniform" : "simulator";
    j["mock"] = m;
  }
  return j;
}

namespace {

class MockBackend final : public ChatBackend {
 public:
  explicit MockBackend(const BackendConfig& c) : cfg_(c) {}

  ChatResult complete(const ChatRequest& request) override {
    ++calls_;
    if (!request.plan || !request.item) fail(ErrorCode::InvalidArgument, "mock backend needs plan coordinates");
    const RunPlan& plan = *request.plan;
    const PlanItem& item = *request.item;
    Label label;
    if (cfg_.mock_mode == MockMode::simulator) {
      label = simulate_label(plan.entity_of(item), plan.sentence_of(item), cfg_.sim, plan.condition);
    } else {
      const auto& perm = permutation(plan.entities.size());
      const std::uint64_t offset = hash_combine(splitmix64(cfg_.sim.seed), plan.sentence_of(item).id) % 3;
      label = kSentimentClasses[(perm[item.entity] + offset) % 3];
    }
    return ChatResult{ChatResult::Status::ok, 200, plan.prompt.wording.label_words[class_index(label)], {}, 0};
  }

  std::size_t calls() const override { return calls_.load(); }

 private:
  const std::vector<std::size_t>& permutation(std::size_t n) {
    std::lock_guard lock(mu_);
    auto it = perms_.find(n);
    if (it != perms_.end()) return it->second;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    Rng rng(hash_combine(cfg_.sim.seed, static_cast<std::uint64_t>(n)));
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    return perms_.emplace(n, std::move(p)).first->second;
  }

  BackendConfig cfg_;
  std::atomic<std::size_t> calls_{0};
  std::mutex mu_;
  std::map<std::size_t, std::vector<std::size_t>> perms_;
};

}  // namespace

std::unique_ptr<ChatBackend> make_mock_backend(const BackendConfig& c) { return std::make_unique<MockBackend>(c); }

std::unique_ptr<ChatBackend> make_backend(const BackendConfig& c) {
  if (auto problems = validate_backend(c); !problems.empty()) {
    fail(ErrorCode::InvalidArgument, "backend " + c.name + ": " + problems.front());
  }
  return c.kind == BackendKind::http_chat ? make_http_backend(c) : make_mock_backend(c);
}

}  // namespace probe
