#pragma once

#include <json.hpp>

#include <string_view>

namespace probe::log {

enum class Level { debug, info, warn, error };

void set_min_level(Level level);

// One JSON object per line on stderr: {"level":..,"msg":..,<fields>}.
void emit(Level level, std::string_view msg, const nlohmann::json& fields = nlohmann::json::object());

inline void info(std::string_view msg, const nlohmann::json& fields = nlohmann::json::object()) {
  emit(Level::info, msg, fields);
}
inline void warn(std::string_view msg, const nlohmann::json& fields = nlohmann::json::object()) {
  emit(Level::warn, msg, fields);
}
inline void error(std::string_view msg, const nlohmann::json& fields = nlohmann::json::object()) {
  emit(Level::error, msg, fields);
}

}  // namespace probe::log
