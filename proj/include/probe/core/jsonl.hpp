#pragma once

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace probe {

using json = nlohmann::json;

struct JsonlLine {
  std::size_t line_number = 0;  // 1-based
  json value;
};

struct JsonlReadResult {
  std::vector<JsonlLine> lines;
  // "path:line: message" for every line that failed to parse.
  std::vector<std::string> errors;
};

// Blank lines are skipped; malformed lines are reported, not thrown.
JsonlReadResult read_jsonl(const std::filesystem::path& path);

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows);

// Writes to a sibling temp file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Byte offset -> 1-based (line, column).
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace probe
