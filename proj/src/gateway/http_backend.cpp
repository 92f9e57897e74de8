#include "probe/core/errors.hpp"
#include "probe/gateway/backend.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <regex>

namespace probe {

std::string http_request_body(const std::string& model_name, const ChatMessages& messages) {
  json msgs = json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  json body = {{"model", model_name}, {"messages", msgs}, {"temperature", 0.0}};
  return body.dump();
}

std::optional<std::string> http_response_content(std::string_view body) {
  const json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  const auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) return std::nullopt;
  const auto& c0 = (*choices)[0];
  if (!c0.is_object() || !c0.contains("message")) return std::nullopt;
  const auto& msg = c0["message"];
  if (!msg.is_object() || !msg.contains("content") || !msg["content"].is_string()) return std::nullopt;
  return msg["content"].get<std::string>();
}

namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string path_prefix;
};

Endpoint split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) fail(ErrorCode::InvalidArgument, "base_url is not an http(s) URL: " + url);
  std::string prefix = m[2].matched ? m[2].str() : "";
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {m[1].str(), prefix};
}

class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(const BackendConfig& c) : cfg_(c), endpoint_(split_url(c.base_url)) {
    if (!c.api_key_env_var.empty()) {
      if (const char* key = std::getenv(c.api_key_env_var.c_str())) key_ = key;
    }
  }

  ChatResult complete(const ChatRequest& request) override {
    ++calls_;
    httplib::Client client(endpoint_.scheme_host_port);
    const auto secs = static_cast<time_t>(cfg_.timeout_s);
    const auto usecs = static_cast<time_t>((cfg_.timeout_s - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    httplib::Headers headers;
    if (!key_.empty()) headers.emplace("Authorization", "Bearer " + key_);

    const auto started = std::chrono::steady_clock::now();
    const auto res = client.Post(endpoint_.path_prefix + "/chat/completions", headers,
                                 http_request_body(cfg_.model_name, request.messages), "application/json");
    ChatResult out;
    out.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    if (!res) {
      out.status = ChatResult::Status::transient;
      out.error = "transport error: " + httplib::to_string(res.error());
      return out;
    }
    out.http_status = res->status;
    if (res->status == 200) {
      if (auto content = http_response_content(res->body)) {
        out.text = *content;
      } else {
        out.status = ChatResult::Status::rejected;
        out.error = "response without choices[0].message.content";
      }
    } else if (res->status == 429 || res->status >= 500) {
      out.status = ChatResult::Status::transient;
      out.error = "HTTP " + std::to_string(res->status);
    } else if (res->status == 401 || res->status == 403) {
      out.status = ChatResult::Status::fatal;
      out.error = "HTTP " + std::to_string(res->status) + ": authentication refused";
    } else {
      out.status = ChatResult::Status::rejected;
      out.error = "HTTP " + std::to_string(res->status);
    }
    return out;
  }

  std::size_t calls() const override { return calls_.load(); }

 private:
  BackendConfig cfg_;
  Endpoint endpoint_;
  std::string key_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace

std::unique_ptr<ChatBackend> make_http_backend(const BackendConfig& c) { return std::make_unique<HttpChatBackend>(c); }

}  // namespace probe
