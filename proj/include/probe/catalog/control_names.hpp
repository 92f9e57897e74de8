#pragma once

#include "probe/catalog/entity.hpp"
#include "probe/prompt/chat.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace probe {

// System + user turn asking a generator model for one fictional name that
// matches the entity's country, birth year and gender and avoids every name
// already produced.
ChatMessages build_fake_name_request(const PoliticalEntity& entity,
                                     const std::vector<std::string>& existing_names);

enum class NameRejection { empty, duplicate, real_name_collision };

std::string_view to_string(NameRejection r);

struct NameVerdict {
  bool accepted = false;
  NameRejection reason = NameRejection::empty;  // meaningful only when !accepted
};

// Tracks generated names (in generation order) and the real names they must
// never equal. Comparison is on normalized names.
class FakeNameRegistry {
 public:
  explicit FakeNameRegistry(const std::vector<PoliticalEntity>& catalog);

  // Accepted names are recorded, so a second identical candidate is a duplicate.
  NameVerdict accept(std::string_view candidate);

  // Names in the order they were accepted; this is the exclusion list for
  // the next request.
  const std::vector<std::string>& existing() const { return accepted_; }

  void add_existing(std::string_view name);

 private:
  std::set<std::string> real_;
  std::set<std::string> taken_;
  std::vector<std::string> accepted_;
};

// Stateless form: checks candidate against existing_names and the entity's own
// name. Kept for callers that manage their own list.
NameVerdict accept_fake_name(std::string_view candidate, const PoliticalEntity& entity,
                             const std::vector<std::string>& existing_names);

// Fills control_name for every entity lacking one by calling `complete` with
// build_fake_name_request, retrying on rejected names up to max_attempts.
// Returns one diagnostic per entity left without a name.
std::vector<Diagnostic> generate_control_names(
    std::vector<PoliticalEntity>& entities,
    const std::function<std::string(const ChatMessages&)>& complete, int max_attempts = 5);

}  // namespace probe
