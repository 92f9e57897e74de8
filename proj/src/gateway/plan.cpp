#include "probe/gateway/plan.hpp"

#include "probe/core/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace probe {

const std::string& RunPlan::name_of(const PlanItem& it) const {
  return presented_name(entity_of(it), condition == Condition::control);
}

std::string RunPlan::sentence_text(const PlanItem& it) const {
  return instantiate(sentence_of(it), entity_of(it), name_of(it));
}

ChatMessages RunPlan::messages(const PlanItem& it) const {
  return build_prompt(prompt, sentence_text(it), name_of(it));
}

RunPlan enumerate_plan(const std::vector<SentenceTemplate>& corpus_slice, const std::vector<PoliticalEntity>& panel,
                       const PromptSpec& spec, Condition condition, std::string run_id, std::string model) {
  if (panel.empty()) fail(ErrorCode::InvalidArgument, "enumerate_plan: empty entity panel");
  if (corpus_slice.size() > std::numeric_limits<std::uint32_t>::max() ||
      panel.size() > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::InvalidArgument, "enumerate_plan: corpus or panel too large");
  }
  for (const auto& t : corpus_slice) {
    if (t.language != spec.language) {
      fail(ErrorCode::InvalidArgument, "template " + t.id + " is not in the plan language " + std::string(to_string(spec.language)));
    }
  }
  if (condition == Condition::control) {
    std::string missing;
    std::size_t n = 0;
    for (const auto& e : panel) {
      if (!e.control_name) {
        if (n++ < 20) missing += (missing.empty() ? "" : ", ") + e.id;
      }
    }
    if (n > 0) {
      if (n > 20) missing += ", ... (" + std::to_string(n) + " total)";
      fail(ErrorCode::MissingControlName, "entities without control names: " + missing);
    }
  }

  RunPlan plan;
  plan.run_id = std::move(run_id);
  plan.model = std::move(model);
  plan.language = spec.language;
  plan.condition = condition;
  plan.prompt = spec;
  plan.sentences = corpus_slice;
  plan.entities = panel;
  std::stable_sort(plan.sentences.begin(), plan.sentences.end(),
                   [](const SentenceTemplate& a, const SentenceTemplate& b) { return a.id < b.id; });
  std::stable_sort(plan.entities.begin(), plan.entities.end(),
                   [](const PoliticalEntity& a, const PoliticalEntity& b) { return a.id < b.id; });

  plan.items.reserve(plan.sentences.size() * plan.entities.size());
  for (std::uint32_t s = 0; s < plan.sentences.size(); ++s) {
    for (std::uint32_t e = 0; e < plan.entities.size(); ++e) {
      plan.items.push_back({s, e, variant_for(plan.entities[e].gender)});
    }
  }
  return plan;
}

std::string cell_run_id(std::string_view base, std::string_view model, Language lang, Condition cond) {
  std::string id(base);
  id += "--";
  id += model;
  id += "--";
  id += to_string(lang);
  id += "--";
  id += to_string(cond);
  return id;
}

PlanFile PlanFile::load(const std::filesystem::path& path) {
  const json j = json::parse(read_file(path));
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  try {
    PlanFile f;
    f.run_id = j.at("run_id").get<std::string>();
    f.model = j.at("model").get<std::string>();
    auto lang = parse_language(j.at("language").get<std::string>());
    auto cond = parse_condition(j.value("condition", std::string{"real"}));
    if (!lang || !cond) fail(ErrorCode::ParseError, "plan has an unknown language or condition");
    f.language = *lang;
    f.condition = *cond;
    f.entities = resolve(j.at("entities").get<std::string>());
    f.sentences = resolve(j.at("sentences").get<std::string>());
    if (j.contains("prompt")) {
      const auto& p = j["prompt"];
      f.shots = p.value("shots", 9);
      f.seed = p.value("seed", std::uint64_t{0});
      if (p.contains("library")) f.prompt_library = resolve(p["library"].get<std::string>());
    }
    if (j.contains("sentence_ids")) f.sentence_ids = j["sentence_ids"].get<std::vector<std::string>>();
    return f;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, "plan file " + path.string() + ": " + e.what());
  }
}

json PlanFile::to_json() const {
  json j = {{"run_id", run_id},
            {"model", model},
            {"language", probe::to_string(language)},
            {"condition", probe::to_string(condition)},
            {"entities", entities.string()},
            {"sentences", sentences.string()},
            {"prompt", {{"shots", shots}, {"seed", seed}}}};
  if (prompt_library) j["prompt"]["library"] = prompt_library->string();
  if (!sentence_ids.empty()) j["sentence_ids"] = sentence_ids;
  return j;
}

RunPlan materialize(const PlanFile& file) {
  auto entities = load_entities(file.entities);
  if (!entities.diagnostics.empty()) {
    fail(ErrorCode::InvalidArgument, "entities file has problems: " + entities.diagnostics.front().message);
  }
  auto corpus = load_corpus(file.sentences);
  if (!corpus.diagnostics.empty()) {
    fail(ErrorCode::InvalidArgument, "sentences file has problems: " + corpus.diagnostics.front().message);
  }
  const std::set<std::string> wanted(file.sentence_ids.begin(), file.sentence_ids.end());
  std::vector<SentenceTemplate> slice;
  for (const auto* t : corpus.corpus.slice(file.language)) {
    if (wanted.empty() || wanted.count(t->id)) slice.push_back(*t);
  }
  const PromptLibrary lib = file.prompt_library ? load_prompt_library(*file.prompt_library) : default_prompt_library();
  const PromptSpec spec = make_prompt_spec(lib, file.language, file.shots, file.seed);
  if (auto problems = validate_prompt_spec(spec); !problems.empty()) {
    fail(ErrorCode::InvalidArgument, "prompt spec: " + problems.front());
  }
  return enumerate_plan(slice, entities.entities, spec, file.condition, file.run_id, file.model);
}

}  // namespace probe
