#include "probe/sim/simulator.hpp"

#include "probe/core/errors.hpp"
#include "probe/core/hashing.hpp"

#include <algorithm>
#include <cmath>

namespace probe {

std::vector<std::string> validate_params(const SimulatorParams& p) {
  std::vector<std::string> problems;
  if (!(p.accuracy >= 0.0 && p.accuracy <= 1.0)) problems.push_back("accuracy must lie in [0, 1]");
  for (Alignment a : kAllAlignments) {
    const double b = p.shift(a);
    if (!(b >= -1.0 && b <= 1.0)) problems.push_back("bias_shift." + std::string(to_string(a)) + " must lie in [-1, 1]");
  }
  return problems;
}

SimulatorParams params_from_json(const json& j) {
  SimulatorParams p;
  try {
    p.accuracy = j.value("accuracy", p.accuracy);
    p.name_keyed = j.value("name_keyed", p.name_keyed);
    p.seed = j.value("seed", p.seed);
    if (j.contains("bias_shift")) {
      for (const auto& [code, v] : j.at("bias_shift").items()) {
        auto a = parse_alignment(code);
        if (!a) fail(ErrorCode::ParseError, "bias_shift: unknown alignment " + code);
        p.set_shift(*a, v.get<double>());
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("simulator params: ") + e.what());
  }
  if (auto problems = validate_params(p); !problems.empty()) fail(ErrorCode::InvalidArgument, problems.front());
  return p;
}

SimulatorParams load_params(const std::filesystem::path& path) {
  try {
    return params_from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

json to_json(const SimulatorParams& p) {
  json shifts = json::object();
  for (Alignment a : kAllAlignments) {
    if (p.shift(a) != 0.0) shifts[std::string(to_string(a))] = p.shift(a);
  }
  return {{"accuracy", p.accuracy}, {"bias_shift", shifts}, {"name_keyed", p.name_keyed}, {"seed", p.seed}};
}

namespace {

struct Layout {
  std::array<Label, 4> order{};
  std::array<double, 4> mass{};
  std::size_t n = 0;
};

Layout layout(Label gold, double accuracy, double shift) {
  Layout l;
  const double err = (1.0 - accuracy) / 2.0;
  Label target = shift < 0 ? Label::negative : Label::positive;
  double extra = 0.0;
  if (shift != 0.0 && gold != target) extra = std::min(accuracy, (1.0 - accuracy) * std::fabs(shift));
  l.order[l.n] = gold;
  l.mass[l.n++] = accuracy - extra;
  if (extra > 0.0) {
    l.order[l.n] = target;
    l.mass[l.n++] = extra;
  }
  for (Label c : kSentimentClasses) {
    if (c == gold) continue;
    l.order[l.n] = c;
    l.mass[l.n++] = err;
  }
  return l;
}

}  // namespace

std::array<double, 3> label_distribution(Label gold, double accuracy, double shift) {
  std::array<double, 3> p{};
  const Layout l = layout(gold, accuracy, shift);
  for (std::size_t i = 0; i < l.n; ++i) p[class_index(l.order[i])] += l.mass[i];
  return p;
}

Label draw_label(Label gold, double accuracy, double shift, double u) {
  const Layout l = layout(gold, accuracy, shift);
  double acc = 0.0;
  for (std::size_t i = 0; i < l.n; ++i) {
    acc += l.mass[i];
    if (u < acc) return l.order[i];
  }
  // Rounding can leave u just above the accumulated total.
  for (std::size_t i = l.n; i-- > 0;) {
    if (l.mass[i] > 0.0) return l.order[i];
  }
  return gold;
}

double coordinate_uniform(std::uint64_t seed, std::string_view entity_id, std::string_view sentence_id, Variant v) {
  std::uint64_t h = hash_combine(splitmix64(seed), entity_id);
  h = hash_combine(h, sentence_id);
  h = hash_combine(h, static_cast<std::uint64_t>(v));
  return to_unit_interval(h);
}

Label simulate_label(const PoliticalEntity& entity, const SentenceTemplate& t, const SimulatorParams& params,
                     Condition condition) {
  const bool unbiased = params.name_keyed && condition == Condition::control;
  const double shift = unbiased ? 0.0 : params.shift(entity.alignment);
  const Variant v = variant_for(entity.gender);
  return draw_label(t.gold_label, params.accuracy, shift, coordinate_uniform(params.seed, entity.id, t.id, v));
}

std::vector<PredictionRecord> simulate_run(const std::vector<SentenceTemplate>& sentences,
                                           const std::vector<PoliticalEntity>& entities, const SimulatorParams& params,
                                           Condition condition, const std::string& run_id, const std::string& model) {
  std::vector<PredictionRecord> out;
  out.reserve(sentences.size() * entities.size());
  for (const auto& t : sentences) {
    for (const auto& e : entities) {
      PredictionRecord r;
      r.run_id = run_id;
      r.model = model;
      r.language = t.language;
      r.sentence_id = t.id;
      r.variant = variant_for(e.gender);
      r.entity_id = e.id;
      r.condition = condition;
      r.label = simulate_label(e, t, params, condition);
      r.raw_text = std::string(to_string(r.label));
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace probe
