#pragma once

#include "probe/core/jsonl.hpp"
#include "probe/core/labels.hpp"
#include "probe/prompt/chat.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace probe {

struct FewShotExample {
  std::string sentence;
  std::string target;
  Label label = Label::neutral;
};

// Language-specific wording; shots and seed are chosen per run.
struct LanguagePrompt {
  std::string instruction;     // system turn
  std::string query_template;  // user turn with {sentence} and {target} slots
  std::array<std::string, 3> label_words;  // answer words for negative, neutral, positive
  std::vector<FewShotExample> examples;    // pool; 3 per class for 9-shot runs
};

struct PromptSpec {
  Language language = Language::eng;
  int shots = 9;
  LanguagePrompt wording;
  std::uint64_t seed = 0;
};

using PromptLibrary = std::map<Language, LanguagePrompt>;

// Shipped wording and few-shot pool for all six languages.
const PromptLibrary& default_prompt_library();

PromptLibrary prompt_library_from_json(const json& j);
PromptLibrary load_prompt_library(const std::filesystem::path& path);
json to_json(const PromptLibrary& lib);

PromptSpec make_prompt_spec(const PromptLibrary& lib, Language lang, int shots, std::uint64_t seed);

// Empty when the spec is usable; otherwise one message per problem.
std::vector<std::string> validate_prompt_spec(const PromptSpec& spec);

// Order in which the selected examples are shown: a seeded Fisher-Yates
// shuffle, redrawn while any three consecutive labels are equal (at most
// 1000 draws, then round-robin by class).
std::vector<std::size_t> order_examples(const std::vector<Label>& labels, std::uint64_t seed);

// The shots-many examples drawn from the pool (first shots/3 of each class),
// in pool order.
std::vector<FewShotExample> select_examples(const PromptSpec& spec);

// Fills {sentence} and {target} in a single pass; text inside the inserted
// values is never rescanned.
std::string render_query(std::string_view query_template, std::string_view sentence, std::string_view target);

// system instruction, then (user, assistant) pairs for the ordered examples,
// then the user query. Throws TargetAbsent when the target is not in the
// sentence.
ChatMessages build_prompt(const PromptSpec& spec, std::string_view sentence_text, std::string_view target_name);

// Canonical, platform-independent serialization used for hashing.
std::string canonical_messages(const ChatMessages& messages);

// SHA-256 hex of canonical_messages.
std::string prompt_hash(const ChatMessages& messages);

}  // namespace probe
