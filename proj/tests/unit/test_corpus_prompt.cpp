#include "probe/core/errors.hpp"
#include "probe/corpus/corpus.hpp"
#include "probe/corpus/translation.hpp"
#include "probe/prompt/prompt.hpp"

#include "../support/synth.hpp"

#include <catch_amalgamated.hpp>

#include <map>

using namespace probe;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::map<std::string, int> codes(const std::vector<Diagnostic>& ds) {
  std::map<std::string, int> out;
  for (const auto& d : ds) ++out[d.code];
  return out;
}

}  // namespace

TEST_CASE("corpus validation") {
  auto c = synth::corpus(6, {Language::eng, Language::fra});
  CHECK(validate_corpus(c, true).empty());

  c.templates[0].male_text = "no target here";
  c.templates[1].female_text = "{{TARGET}} and {{TARGET}}";
  c.templates[7].gold_label = Label::positive;  // fra S00001 disagrees with eng
  c.templates.push_back(c.templates[3]);
  auto got = codes(validate_corpus(c, false));
  CHECK(got["MissingPlaceholder"] == 1);
  CHECK(got["RepeatedPlaceholder"] == 1);
  CHECK(got["LabelMismatch"] == 1);
  CHECK(got["DuplicateId"] == 1);
  CHECK(got.count("Unbalanced") == 0);
  CHECK(codes(validate_corpus(c, true)).count("Unbalanced") == 1);
}

TEST_CASE("corpus stats and slicing") {
  auto c = synth::corpus(7, {Language::spa});
  auto stats = corpus_stats(c);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].templates == 7);
  CHECK(stats[0].per_class == std::array<std::size_t, 3>{3, 2, 2});
  CHECK(c.slice(Language::spa).size() == 7);
  CHECK(c.slice(Language::eng).empty());
  CHECK(c.find("S00003", Language::spa) != nullptr);
}

TEST_CASE("instantiation picks the gendered variant") {
  auto ents = synth::panel(2, {Alignment::CC});
  auto t = synth::sentences(1)[0];
  CHECK(instantiate(t, ents[0]) == "Sentence 0 about Person 00000 and his record.");
  CHECK(instantiate(t, ents[1], presented_name(ents[1], true)) == "Sentence 0 about Control 00001 and her record.");
  ents[0].control_name.reset();
  CHECK(code_of([&] { presented_name(ents[0], true); }) == ErrorCode::MissingControlName);
}

TEST_CASE("pivot insertion and restoration") {
  CHECK(pre_translation_insert("{{TARGET}} won.", Gender::female) == "Mary won.");
  const auto pivots = PivotTable::defaults();
  CHECK(post_translation_restore("Juan ganó.", Gender::male, Language::spa, pivots) == "{{TARGET}} ganó.");
  CHECK(post_translation_restore("约翰赢了。", Gender::male, Language::zho, pivots) == "{{TARGET}}赢了。");
  CHECK(code_of([&] { post_translation_restore("Él ganó.", Gender::male, Language::spa, pivots); }) ==
        ErrorCode::PivotNotFound);
  CHECK(code_of([&] { post_translation_restore("Juan y John.", Gender::male, Language::spa, pivots); }) ==
        ErrorCode::PivotAmbiguous);
  // "Johnson" is not the pivot in a word-bounded language
  CHECK(post_translation_restore("John met Johnson.", Gender::male, Language::eng, pivots) ==
        "{{TARGET}} met Johnson.");

  Corpus translated;
  SentenceTemplate ok{"S1", Language::fra, Label::positive, "Jean a gagné.", "Marie a gagné.", false, json::object()};
  SentenceTemplate bad{"S2", Language::fra, Label::neutral, "Il a gagné.", "Marie a gagné.", false, json::object()};
  translated.templates = {ok, bad};
  auto out = restore_corpus(translated, pivots);
  REQUIRE(out.restored.templates.size() == 1);
  CHECK(out.restored.templates[0].female_text == "{{TARGET}} a gagné.");
  REQUIRE(out.manual_review.size() == 1);
  CHECK(out.manual_review[0].subject.find("S2") != std::string::npos);
}

TEST_CASE("example ordering never shows three equal labels in a row") {
  const std::vector<Label> labels = {Label::negative, Label::negative, Label::negative, Label::neutral, Label::neutral,
                                     Label::neutral,  Label::positive, Label::positive, Label::positive};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto order = order_examples(labels, seed);
    REQUIRE(order.size() == labels.size());
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);
    for (std::size_t i = 2; i < order.size(); ++i) {
      REQUIRE_FALSE((labels[order[i]] == labels[order[i - 1]] && labels[order[i]] == labels[order[i - 2]]));
    }
    REQUIRE(order_examples(labels, seed) == order);
  }
}

TEST_CASE("prompt structure and hashing") {
  for (Language lang : kAllLanguages) {
    auto spec = make_prompt_spec(default_prompt_library(), lang, 9, 3);
    CHECK(validate_prompt_spec(spec).empty());
    auto msgs = build_prompt(spec, "Sentence about Ana.", "Ana");
    REQUIRE(msgs.size() == 1 + 2 * 9 + 1);
    CHECK(msgs.front().role == "system");
    CHECK(msgs.back().role == "user");
    CHECK(msgs.back().content.find("Sentence about Ana.") != std::string::npos);
    for (std::size_t i = 1; i + 1 < msgs.size(); i += 2) {
      CHECK(msgs[i].role == "user");
      CHECK(msgs[i + 1].role == "assistant");
    }
    CHECK(prompt_hash(msgs) == prompt_hash(build_prompt(spec, "Sentence about Ana.", "Ana")));
    CHECK(prompt_hash(msgs) != prompt_hash(build_prompt(spec, "Sentence about Bo.", "Bo")));
  }
  auto spec = make_prompt_spec(default_prompt_library(), Language::eng, 0, 0);
  CHECK(build_prompt(spec, "x Ana", "Ana").size() == 2);
  CHECK(code_of([&] { build_prompt(spec, "nobody", "Ana"); }) == ErrorCode::TargetAbsent);
  CHECK(prompt_hash({{"user", "a"}}) == sha256_hex(canonical_messages({{"user", "a"}})));
}

TEST_CASE("query rendering does not rescan inserted values") {
  CHECK(render_query("S={sentence} T={target}", "has {target} inside", "X") == "S=has {target} inside T=X");
}
