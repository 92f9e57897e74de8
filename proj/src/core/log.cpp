#include "probe/core/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

namespace probe::log {
namespace {

std::atomic<Level> g_min_level{Level::info};
std::mutex g_mutex;

const char* name(Level level) {
  switch (level) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
  }
  return "info";
}

}  // namespace

void set_min_level(Level level) { g_min_level = level; }

void emit(Level level, std::string_view msg, const nlohmann::json& fields) {
  if (level < g_min_level.load()) return;
  nlohmann::json line = fields.is_object() ? fields : nlohmann::json::object();
  line["level"] = name(level);
  line["msg"] = std::string(msg);
  const std::string text = line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fputs(text.c_str(), stderr);
}

}  // namespace probe::log
