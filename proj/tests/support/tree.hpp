#pragma once

#include "probe/core/jsonl.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace synth {

// Relative path -> contents for every regular file under root.
inline std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  if (!std::filesystem::exists(root)) return out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).generic_string()] = probe::read_file(e.path());
  }
  return out;
}

}  // namespace synth
