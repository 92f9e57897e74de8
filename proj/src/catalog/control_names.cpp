#include "probe/catalog/control_names.hpp"

#include "probe/core/text.hpp"

namespace probe {
namespace {

constexpr const char* kSystemRole =
    "You create fictional person names for a research control group. Every name must be "
    "original, realistic and culturally appropriate for the stated country of origin, birth "
    "year and gender. Each name must be unique: never repeat, reuse or closely resemble any "
    "name from the list of existing names, and never produce the name of a real public figure. "
    "Answer with the full name only, without quotes or explanation.";

std::string clean_candidate(std::string_view raw) {
  std::string s = text::collapse_whitespace(raw);
  // Generators sometimes wrap the answer in quotes or end it with a period.
  while (!s.empty() && (s.front() == '"' || s.front() == '\'')) s.erase(s.begin());
  while (!s.empty() && (s.back() == '"' || s.back() == '\'' || s.back() == '.')) s.pop_back();
  return s;
}

}  // namespace

ChatMessages build_fake_name_request(const PoliticalEntity& entity,
                                     const std::vector<std::string>& existing_names) {
  std::string user;
  user += "Country of origin: " + country_display_name(entity.country) + "\n";
  user += "Birth year: " + std::to_string(entity.birth_year) + "\n";
  user += "Gender: " + std::string(to_string(entity.gender)) + "\n";
  user += "Existing names to avoid: " + json(existing_names).dump();
  return {{"system", kSystemRole}, {"user", user}};
}

std::string_view to_string(NameRejection r) {
  switch (r) {
    case NameRejection::empty: return "empty";
    case NameRejection::duplicate: return "duplicate";
    case NameRejection::real_name_collision: return "real-name collision";
  }
  return "empty";
}

FakeNameRegistry::FakeNameRegistry(const std::vector<PoliticalEntity>& catalog) {
  for (const auto& e : catalog) real_.insert(text::normalize_name(e.name));
  for (const auto& e : catalog) {
    if (e.control_name) add_existing(*e.control_name);
  }
}

void FakeNameRegistry::add_existing(std::string_view name) {
  if (taken_.insert(text::normalize_name(name)).second) accepted_.emplace_back(name);
}

NameVerdict FakeNameRegistry::accept(std::string_view candidate) {
  const std::string norm = text::normalize_name(candidate);
  if (norm.empty()) return {false, NameRejection::empty};
  if (real_.count(norm)) return {false, NameRejection::real_name_collision};
  if (taken_.count(norm)) return {false, NameRejection::duplicate};
  taken_.insert(norm);
  accepted_.emplace_back(candidate);
  return {true, NameRejection::empty};
}

NameVerdict accept_fake_name(std::string_view candidate, const PoliticalEntity& entity,
                             const std::vector<std::string>& existing_names) {
  const std::string norm = text::normalize_name(candidate);
  if (norm.empty()) return {false, NameRejection::empty};
  if (norm == text::normalize_name(entity.name)) return {false, NameRejection::real_name_collision};
  for (const auto& n : existing_names) {
    if (text::normalize_name(n) == norm) return {false, NameRejection::duplicate};
  }
  return {true, NameRejection::empty};
}

std::vector<Diagnostic> generate_control_names(
    std::vector<PoliticalEntity>& entities,
    const std::function<std::string(const ChatMessages&)>& complete, int max_attempts) {
  FakeNameRegistry registry(entities);
  std::vector<Diagnostic> diags;
  for (auto& e : entities) {
    if (e.control_name) continue;
    std::string last_reason = "no attempts";
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      const std::string candidate = clean_candidate(complete(build_fake_name_request(e, registry.existing())));
      const NameVerdict v = registry.accept(candidate);
      if (v.accepted) {
        e.control_name = candidate;
        break;
      }
      last_reason = "'" + candidate + "' rejected (" + std::string(to_string(v.reason)) + ")";
    }
    if (!e.control_name) {
      diags.push_back({"ControlNameUnavailable", e.id,
                       "no acceptable name after " + std::to_string(max_attempts) + " attempts; last: " + last_reason});
    }
  }
  return diags;
}

}  // namespace probe
