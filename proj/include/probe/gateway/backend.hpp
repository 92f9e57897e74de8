#pragma once

#include "probe/core/jsonl.hpp"
#include "probe/gateway/plan.hpp"
#include "probe/prompt/chat.hpp"
#include "probe/sim/simulator.hpp"

#include <memory>
#include <optional>
#include <string>

namespace probe {

enum class BackendKind { http_chat, mock };

enum class MockMode { simulator, uniform };

struct BackendConfig {
  std::string name;  // matrix-facing model label
  BackendKind kind = BackendKind::mock;
  // http_chat
  std::string base_url;
  std::string api_key_env_var;
  std::string model_name;
  double temperature = 0.0;
  double timeout_s = 60.0;
  int max_retries = 5;
  double backoff_base_s = 1.0;
  double backoff_cap_s = 60.0;
  int max_in_flight = 8;
  // mock
  MockMode mock_mode = MockMode::simulator;
  SimulatorParams sim;
};

std::vector<std::string> validate_backend(const BackendConfig& c);
BackendConfig backend_from_json(const json& j);
json to_json(const BackendConfig& c);

struct ChatRequest {
  const RunPlan* plan = nullptr;
  const PlanItem* item = nullptr;
  ChatMessages messages;
};

struct ChatResult {
  enum class Status { ok, transient, fatal, rejected };
  Status status = Status::ok;
  int http_status = 0;
  std::string text;   // response content when ok
  std::string error;  // note when not ok
  long long latency_ms = 0;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResult complete(const ChatRequest& request) = 0;
  // Number of calls that reached the backend.
  virtual std::size_t calls() const = 0;
};

// OpenAI-compatible chat completions. The request body is
//   {"model": <model_name>, "messages": [{"role", "content"}...], "temperature": 0.0}
// POSTed to <base_url>/chat/completions with "Authorization: Bearer <key>".
// 429, 5xx and transport errors are transient; 401/403 are fatal; other 4xx
// are rejected. The answer is choices[0].message.content.
std::unique_ptr<ChatBackend> make_http_backend(const BackendConfig& c);

// Request body exactly as sent.
std::string http_request_body(const std::string& model_name, const ChatMessages& messages);
// Extracts choices[0].message.content; nullopt when absent.
std::optional<std::string> http_response_content(std::string_view body);

// Answers with the localized label word. simulator mode draws labels from the
// configured params; uniform mode assigns each sentence an exactly balanced
// split of the panel across the three classes (panel size must be a multiple
// of 3 for exact balance).
std::unique_ptr<ChatBackend> make_mock_backend(const BackendConfig& c);

std::unique_ptr<ChatBackend> make_backend(const BackendConfig& c);

}  // namespace probe
