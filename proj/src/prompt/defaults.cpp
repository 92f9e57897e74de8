#include "probe/core/errors.hpp"
#include "probe/prompt/prompt.hpp"

namespace probe {
namespace {

// Few-shot pool shared by every language; only the answer words are localized.
std::vector<FewShotExample> shared_examples() {
  return {
      {"\xE2\x80\x9CThe outstanding experiences of my life,\xE2\x80\x9D he says, \xE2\x80\x9C"
       "are all bound up with the Vije\xC4\x87nica.\xE2\x80\x9D Very early in life, Focak came to love languages, "
       "literature, painting and architecture.",
       "Focak", Label::positive},
      {"At sixteen, resembling a black-haired Grace Kelly, he devoured books on the architecture of the "
       "Renaissance and the works of Boccaccio and Dante in the library\xE2\x80\x99s wood-paneled reading room.",
       "Grace Kelly", Label::positive},
      {"Merkel has been the cork in the bottle with regard to tensions and populist powers in Europe.", "Merkel",
       Label::positive},
      {"\xE2\x80\x9CHe was incredibly brave\xE2\x80\x9D \xE2\x80\x93 muses Boche\xC5\x84ski and adds that Kolakowski had "
       "set an example for democratic opposition in Poland.",
       "Boche\xC5\x84ski", Label::neutral},
      {"Sterne begins by pointing out that the IMF's analysis, which El-Erian correctly lauded, has been somewhat "
       "off target in Greece's case.",
       "Sterne", Label::neutral},
      {"Facing a surprise rebellion from Mario Monti and Mariano Rajoy, she conceded crucial ground; she allowed "
       "the European Stability Mechanism (ESM) \xE2\x80\x93 that is the permanent European relief fund soon to be in "
       "place \xE2\x80\x93 to be able to capitalise Spanish banks directly and buy up Italian debt without requiring an "
       "austerity programme.",
       "Mariano Rajoy", Label::neutral},
      {"In the run-up to the second round, the two contestants will attempt to win over protest voters and in "
       "particular the significant number that gave their backing to the discourse espoused by Marine Le Pen.",
       "Marine Le Pen", Label::negative},
      {"\xE2\x80\xA6 all Merkel has to offer Monti\xE2\x80\x99s Italy is words: words that are certainly new, but still "
       "only words.",
       "Merkel", Label::negative},
      {"Certainly, Angela Merkel speaks constantly of \xE2\x80\x98" "European solidarity\xE2\x80\x99, [...] but she is not "
       "ready to support young Greeks fleeing the crisis.",
       "Angela Merkel", Label::negative},
  };
}

PromptLibrary build_defaults() {
  PromptLibrary lib;
  lib[Language::eng] = {
      "You will be given a sentence and a target person mentioned in it. Classify the sentiment the sentence "
      "expresses toward the target. Answer with exactly one word: positive, neutral, or negative.",
      "Sentence: {sentence}\nTarget: {target}\nSentiment:",
      {"negative", "neutral", "positive"},
      shared_examples()};
  lib[Language::fra] = {
      "Vous allez recevoir une phrase et une personne cible mentionn\xC3\xA9" "e dans cette phrase. Classez le "
      "sentiment que la phrase exprime envers la cible. R\xC3\xA9pondez par un seul mot : positif, neutre ou "
      "n\xC3\xA9gatif.",
      "Phrase : {sentence}\nCible : {target}\nSentiment :",
      {"n\xC3\xA9gatif", "neutre", "positif"},
      shared_examples()};
  lib[Language::spa] = {
      "Recibir\xC3\xA1s una oraci\xC3\xB3n y una persona objetivo mencionada en ella. Clasifica el sentimiento que la "
      "oraci\xC3\xB3n expresa hacia el objetivo. Responde con una sola palabra: positivo, neutral o negativo.",
      "Oraci\xC3\xB3n: {sentence}\nObjetivo: {target}\nSentimiento:",
      {"negativo", "neutral", "positivo"},
      shared_examples()};
  lib[Language::rus] = {
      "Вам будет дано предложение и упомянутый в нём целевой человек. Определите тональность предложения по "
      "отношению к цели. Ответьте одним словом: позитивная, нейтральная или негативная.",
      "Предложение: {sentence}\nЦель: {target}\nТональность:",
      {"негативная", "нейтральная", "позитивная"},
      shared_examples()};
  lib[Language::ara] = {
      "ستُعطى جملة وشخصًا مستهدفًا مذكورًا فيها. صنّف المشاعر التي تعبّر عنها الجملة تجاه الشخص المستهدف. "
      "أجب بكلمة واحدة فقط: إيجابي أو محايد أو سلبي.",
      "الجملة: {sentence}\nالهدف: {target}\nالمشاعر:",
      {"سلبي", "محايد", "إيجابي"},
      shared_examples()};
  lib[Language::zho] = {
      "你将看到一个句子以及句中提到的目标人物。请判断该句子对目标人物表达的情感。只用一个词回答：积极、中性或消极。",
      "句子：{sentence}\n目标：{target}\n情感：",
      {"消极", "中性", "积极"},
      shared_examples()};
  return lib;
}

}  // namespace

const PromptLibrary& default_prompt_library() {
  static const PromptLibrary lib = build_defaults();
  return lib;
}

PromptLibrary prompt_library_from_json(const json& j) {
  // Languages omitted from the file keep the shipped wording.
  if (!j.is_object()) fail(ErrorCode::ParseError, "prompt spec file must be a JSON object keyed by language");
  PromptLibrary lib = default_prompt_library();
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto lang = parse_language(it.key());
    if (!lang) fail(ErrorCode::ParseError, "unknown language '" + it.key() + "' in prompt spec");
    const json& v = it.value();
    LanguagePrompt& p = lib[*lang];
    if (v.contains("instruction")) p.instruction = v["instruction"].get<std::string>();
    if (v.contains("query_template")) p.query_template = v["query_template"].get<std::string>();
    if (v.contains("label_words")) {
      for (Label c : kSentimentClasses) {
        p.label_words[class_index(c)] = v["label_words"].at(std::string(to_string(c))).get<std::string>();
      }
    }
    if (v.contains("examples")) {
      p.examples.clear();
      for (const auto& ex : v["examples"]) {
        auto label = parse_label(ex.at("label").get<std::string>());
        if (!label || !is_valid(*label)) fail(ErrorCode::ParseError, "few-shot example with bad label");
        p.examples.push_back({ex.at("sentence").get<std::string>(), ex.at("target").get<std::string>(), *label});
      }
    }
  }
  return lib;
}

PromptLibrary load_prompt_library(const std::filesystem::path& path) {
  return prompt_library_from_json(json::parse(read_file(path)));
}

json to_json(const PromptLibrary& lib) {
  json j = json::object();
  for (const auto& [lang, p] : lib) {
    json words = json::object();
    for (Label c : kSentimentClasses) words[std::string(to_string(c))] = p.label_words[class_index(c)];
    json examples = json::array();
    for (const auto& ex : p.examples) {
      examples.push_back({{"sentence", ex.sentence}, {"target", ex.target}, {"label", to_string(ex.label)}});
    }
    j[std::string(to_string(lang))] = {{"instruction", p.instruction},
                                       {"query_template", p.query_template},
                                       {"label_words", words},
                                       {"examples", examples}};
  }
  return j;
}

}  // namespace probe
