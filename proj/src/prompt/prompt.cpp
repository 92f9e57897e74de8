#include "probe/prompt/prompt.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"

#include <algorithm>
#include <numeric>

namespace probe {
namespace {

constexpr int kMaxDraws = 1000;

bool has_three_run(const std::vector<Label>& labels, const std::vector<std::size_t>& order) {
  for (std::size_t i = 2; i < order.size(); ++i) {
    if (labels[order[i]] == labels[order[i - 1]] && labels[order[i]] == labels[order[i - 2]]) return true;
  }
  return false;
}

std::vector<std::size_t> round_robin(const std::vector<Label>& labels) {
  std::array<std::vector<std::size_t>, 4> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[class_index(labels[i])].push_back(i);
  std::vector<std::size_t> out;
  for (std::size_t round = 0; out.size() < labels.size(); ++round) {
    for (const auto& bucket : by_class) {
      if (round < bucket.size()) out.push_back(bucket[round]);
    }
  }
  return out;
}

}  // namespace

PromptSpec make_prompt_spec(const PromptLibrary& lib, Language lang, int shots, std::uint64_t seed) {
  auto it = lib.find(lang);
  if (it == lib.end()) fail(ErrorCode::InvalidArgument, "no prompt wording for language " + std::string(to_string(lang)));
  return PromptSpec{lang, shots, it->second, seed};
}

std::vector<std::string> validate_prompt_spec(const PromptSpec& spec) {
  std::vector<std::string> problems;
  if (spec.shots != 0 && spec.shots != 6 && spec.shots != 9) {
    problems.push_back("shots must be 0, 6 or 9 (got " + std::to_string(spec.shots) + ")");
  }
  const auto& w = spec.wording;
  if (w.instruction.empty()) problems.push_back("instruction is empty");
  if (w.query_template.find("{sentence}") == std::string::npos) problems.push_back("query_template lacks {sentence}");
  if (w.query_template.find("{target}") == std::string::npos) problems.push_back("query_template lacks {target}");
  for (std::size_t c = 0; c < 3; ++c) {
    if (w.label_words[c].empty()) problems.push_back("label word for " + std::string(to_string(kSentimentClasses[c])) + " is empty");
  }
  std::array<int, 3> per_class{};
  for (const auto& ex : w.examples) {
    if (!is_valid(ex.label)) {
      problems.push_back("few-shot example has an invalid label");
      continue;
    }
    ++per_class[class_index(ex.label)];
    if (ex.sentence.find(ex.target) == std::string::npos) {
      problems.push_back("few-shot target '" + ex.target + "' does not occur in its sentence");
    }
  }
  const int need = spec.shots / 3;
  for (std::size_t c = 0; c < 3; ++c) {
    if (per_class[c] < need) {
      problems.push_back("need " + std::to_string(need) + " " + std::string(to_string(kSentimentClasses[c])) +
                         " examples, have " + std::to_string(per_class[c]));
    }
    if (spec.shots == 9 && per_class[c] != 3) {
      problems.push_back("9-shot pool must hold exactly 3 examples per class");
      break;
    }
  }
  return problems;
}

std::vector<std::size_t> order_examples(const std::vector<Label>& labels, std::uint64_t seed) {
  std::vector<std::size_t> order(labels.size());
  if (labels.size() < 3) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (labels.size() == 2 && (Rng(seed).next() & 1U)) std::swap(order[0], order[1]);
    return order;
  }
  Rng rng(seed);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    if (!has_three_run(labels, order)) return order;
  }
  return round_robin(labels);
}

std::vector<FewShotExample> select_examples(const PromptSpec& spec) {
  const int per_class = spec.shots / 3;
  std::array<int, 3> taken{};
  std::vector<FewShotExample> out;
  for (const auto& ex : spec.wording.examples) {
    if (!is_valid(ex.label)) continue;
    int& n = taken[class_index(ex.label)];
    if (n < per_class) {
      out.push_back(ex);
      ++n;
    }
  }
  return out;
}

std::string render_query(std::string_view query_template, std::string_view sentence, std::string_view target) {
  static constexpr std::string_view kSentence = "{sentence}";
  static constexpr std::string_view kTarget = "{target}";
  std::string out;
  out.reserve(query_template.size() + sentence.size() + target.size());
  std::size_t i = 0;
  while (i < query_template.size()) {
    if (query_template.compare(i, kSentence.size(), kSentence) == 0) {
      out += sentence;
      i += kSentence.size();
    } else if (query_template.compare(i, kTarget.size(), kTarget) == 0) {
      out += target;
      i += kTarget.size();
    } else {
      out += query_template[i++];
    }
  }
  return out;
}

ChatMessages build_prompt(const PromptSpec& spec, std::string_view sentence_text, std::string_view target_name) {
  if (target_name.empty() || sentence_text.find(target_name) == std::string_view::npos) {
    fail(ErrorCode::TargetAbsent, "target '" + std::string(target_name) + "' not found in sentence");
  }
  const auto& w = spec.wording;
  ChatMessages messages;
  messages.push_back({"system", w.instruction});

  const auto examples = select_examples(spec);
  std::vector<Label> labels;
  labels.reserve(examples.size());
  for (const auto& ex : examples) labels.push_back(ex.label);
  for (std::size_t idx : order_examples(labels, spec.seed)) {
    const auto& ex = examples[idx];
    messages.push_back({"user", render_query(w.query_template, ex.sentence, ex.target)});
    messages.push_back({"assistant", w.label_words[class_index(ex.label)]});
  }
  messages.push_back({"user", render_query(w.query_template, sentence_text, target_name)});
  return messages;
}

std::string canonical_messages(const ChatMessages& messages) {
  json arr = json::array();
  for (const auto& m : messages) arr.push_back({{"content", m.content}, {"role", m.role}});
  return arr.dump();
}

std::string prompt_hash(const ChatMessages& messages) { return sha256_hex(canonical_messages(messages)); }

}  // namespace probe
