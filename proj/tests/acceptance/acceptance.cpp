// Offline acceptance suite; prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "probe/catalog/alignment.hpp"
#include "probe/cli/config.hpp"
#include "probe/cli/pipeline.hpp"
#include "probe/core/errors.hpp"
#include "probe/core/jsonl.hpp"
#include "probe/core/log.hpp"
#include "probe/gateway/backend.hpp"
#include "probe/gateway/cache.hpp"
#include "probe/gateway/executor.hpp"
#include "probe/gateway/parse.hpp"
#include "probe/gateway/plan.hpp"
#include "probe/metrics/alignment_tests.hpp"
#include "probe/metrics/compare.hpp"
#include "probe/metrics/jaccard.hpp"
#include "probe/metrics/mann_whitney.hpp"
#include "probe/metrics/profile.hpp"
#include "probe/metrics/scores.hpp"
#include "probe/metrics/similarity.hpp"
#include "probe/prompt/prompt.hpp"
#include "probe/sim/simulator.hpp"

#include "../support/synth.hpp"
#include "../support/tree.hpp"
#include "../support/workspace.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

using namespace probe;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::vector<PoliticalEntity> panel_of_size(std::size_t n) {
  auto p = synth::panel((n + 7) / 8);
  p.resize(n);
  return p;
}

ExecuteOptions fast_options() {
  ExecuteOptions o;
  o.max_in_flight = 4;
  o.sleep = [](std::chrono::duration<double>) {};
  return o;
}

BackendConfig mock(MockMode mode, SimulatorParams sim) {
  BackendConfig c;
  c.name = "mock";
  c.kind = BackendKind::mock;
  c.mock_mode = mode;
  c.sim = sim;
  return c;
}

// ---------------------------------------------------------------------------

Outcome plan_cardinality() {
  const auto sentences = synth::sentences(450);
  const auto panel = panel_of_size(1319);
  const auto spec = make_prompt_spec(default_prompt_library(), Language::eng, 9, 1);
  const auto t0 = Clock::now();
  const auto plan = enumerate_plan(sentences, panel, spec, Condition::real, "acc", "m");
  const double secs = seconds_since(t0);
  return {plan.size() == 593550 && secs < 5.0, "items=" + std::to_string(plan.size()) + " time=" + num(secs, 3) + "s"};
}

Outcome alignment_fixtures() {
  const json cases = json::parse(read_file(std::filesystem::path(PROBE_FIXTURES_DIR) / "alignment_cases.json"));
  std::size_t ok = 0;
  bool has_example = false, has_bt = false, has_half = false;
  for (const auto& c : cases) {
    std::vector<Alignment> raw;
    for (const auto& code : c["raw"]) raw.push_back(*parse_alignment(code.get<std::string>()));
    const Alignment want = *parse_alignment(c["expected"].get<std::string>());
    if (compute_alignment(raw) == want) ++ok;
    has_example |= raw == std::vector<Alignment>{Alignment::CL, Alignment::CC, Alignment::CR};
    has_bt |= std::all_of(raw.begin(), raw.end(), [](Alignment a) { return a == Alignment::BT; });
    int sum = 0, n = 0;
    for (Alignment a : raw) {
      if (auto s = alignment_score(a)) sum += *s, ++n;
    }
    has_half |= n > 1 && (2 * sum) % (2 * n) != 0 && (2 * sum) % n == 0;
  }
  const bool pass = cases.size() >= 20 && ok == cases.size() && has_example && has_bt && has_half;
  return {pass, std::to_string(ok) + "/" + std::to_string(cases.size()) + " fixtures match"};
}

Outcome inconsistency_bounds() {
  // deterministic backend
  SimulatorParams exact;
  exact.accuracy = 1.0;
  exact.set_shift(Alignment::FR, -1.0);
  const auto spec = make_prompt_spec(default_prompt_library(), Language::eng, 9, 1);
  const auto small = enumerate_plan(synth::sentences(12), synth::panel(3), spec, Condition::real, "acc", "m");
  auto det = make_backend(mock(MockMode::simulator, exact));
  const double ic_det = inconsistency(execute(small, *det, nullptr, fast_options()).records).ic;

  // uniform backend, 10002 labels per sentence
  const auto wide = enumerate_plan(synth::sentences(3), panel_of_size(10002), spec, Condition::real, "acc", "m");
  auto uni = make_backend(mock(MockMode::uniform, SimulatorParams{}));
  const double ic_uni = inconsistency(execute(wide, *uni, nullptr, fast_options()).records).ic;

  // monotonicity in |bias| averaged over seeds
  const auto panel = synth::panel(20);
  const auto sents = synth::sentences(60);
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> avg;
  for (double b : grid) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SimulatorParams p;
      p.seed = seed;
      p.set_shift(Alignment::FR, -b);
      sum += inconsistency(simulate_run(sents, panel, p, Condition::real, "acc", "m")).ic;
    }
    avg.push_back(sum / 20.0);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < avg.size(); ++i) monotone &= avg[i] >= avg[i - 1];
  const double gap = std::abs(ic_uni - std::log2(3.0));
  std::string curve;
  for (double v : avg) curve += (curve.empty() ? "" : ",") + num(v, 5);
  return {ic_det == 0.0 && gap <= 1e-9 && monotone,
          "ic_det=" + num(ic_det) + " |ic_uni-log2(3)|=" + num(gap, 3) + " ic(bias)=[" + curve + "]"};
}

// P(U >= u) by direct pair counting over every relabeling of the pooled data.
double brute_force_p(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pool(x);
  pool.insert(pool.end(), y.begin(), y.end());
  const auto twice_u = [](const std::vector<double>& a, const std::vector<double>& b) {
    long long s = 0;
    for (double u : a)
      for (double v : b) s += u > v ? 2 : (u == v ? 1 : 0);
    return s;
  };
  const long long observed = twice_u(x, y);
  long long hits = 0, total = 0;
  std::vector<double> a, b;
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    if (std::popcount(mask) != static_cast<int>(x.size())) continue;
    a.clear();
    b.clear();
    for (std::size_t i = 0; i < pool.size(); ++i) (mask >> i & 1 ? a : b).push_back(pool[i]);
    ++total;
    hits += twice_u(a, b) >= observed;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

Outcome mann_whitney_correctness() {
  Rng rng(2024);
  double worst_exact = 0.0;
  std::size_t compared = 0;
  for (std::size_t n1 = 1; n1 < 10; ++n1) {
    for (std::size_t n2 = 1; n1 + n2 <= 10; ++n2) {
      for (int rep = 0; rep < 40; ++rep) {
        std::vector<double> x(n1), y(n2);
        for (auto& v : x) v = static_cast<double>(rng.below(4));
        for (auto& v : y) v = static_cast<double>(rng.below(4));
        std::set<double> distinct(x.begin(), x.end());
        distinct.insert(y.begin(), y.end());
        if (distinct.size() < 2) continue;  // fully tied samples use the fixed p = 0.5 convention
        const double p = mann_whitney_one_sided(x, y, MwMethod::exact).p;
        worst_exact = std::max(worst_exact, std::abs(p - brute_force_p(x, y)));
        ++compared;
      }
    }
  }
  double worst_normal = 0.0;
  std::size_t worst_split = 0;
  for (std::size_t n1 = 1; n1 < 12; ++n1) {
    for (int rep = 0; rep < 60; ++rep) {
      std::vector<double> pool(12);
      std::iota(pool.begin(), pool.end(), 0.0);
      for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[rng.below(i + 1)]);
      const std::vector<double> x(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n1));
      const std::vector<double> y(pool.begin() + static_cast<std::ptrdiff_t>(n1), pool.end());
      const double d = std::abs(mann_whitney_one_sided(x, y, MwMethod::exact).p -
                                mann_whitney_one_sided(x, y, MwMethod::normal).p);
      if (d > worst_normal) worst_normal = d, worst_split = n1;
    }
  }
  const bool exact_ok = worst_exact <= 1e-12;
  const bool normal_ok = worst_normal <= 1e-3;
  return {exact_ok && normal_ok, "exact-vs-brute max=" + num(worst_exact, 3) + " over " + std::to_string(compared) +
                                     " samples (" + (exact_ok ? "ok" : "bad") + "); normal-vs-exact max=" +
                                     num(worst_normal, 4) + " at split " + std::to_string(worst_split) + "/" +
                                     std::to_string(12 - worst_split) + " (" + (normal_ok ? "ok" : "exceeds 1e-3") + ")"};
}

PValueTable simulated_table(const std::vector<PoliticalEntity>& panel, const std::vector<SentenceTemplate>& sents,
                            const SimulatorParams& p) {
  const auto records = simulate_run(sents, panel, p, Condition::real, "acc", "m");
  return pairwise_tests_from_groups(means_by_alignment(entity_means(records), panel));
}

Outcome bias_detection_power() {
  const auto panel = synth::panel(100);
  const auto sents = synth::sentences(50);
  int detected = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    SimulatorParams p;
    p.accuracy = 0.7;
    p.seed = hash_combine(1, rep);
    p.set_shift(Alignment::FR, -0.5);
    const auto t = simulated_table(panel, sents, p);
    detected += t.at(Alignment::CC, Alignment::FR).value() < 0.01;
  }
  std::size_t low = 0, cells = 0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    SimulatorParams p;
    p.accuracy = 0.7;
    p.seed = hash_combine(2, rep);
    const auto t = simulated_table(panel, sents, p);
    for (const auto& row : t.p)
      for (const auto& c : row) {
        if (!c) continue;
        ++cells;
        low += *c < 0.01;
      }
  }
  const double rate = static_cast<double>(low) / static_cast<double>(cells);
  return {detected >= 95 && std::abs(rate - 0.01) <= 0.005,
          "power=" + std::to_string(detected) + "/100 null_rate=" + num(rate, 4) + " over " + std::to_string(cells) +
              " cells"};
}

Outcome mitigation_direction() {
  const auto t0 = Clock::now();
  const auto panel = synth::panel(200);
  const auto corpus = synth::corpus(100, {Language::eng});
  SimulatorParams p;
  p.accuracy = 0.7;
  p.seed = 99;
  p.set_shift(Alignment::FR, -0.5);
  const auto backend_cfg = mock(MockMode::simulator, p);
  const auto spec = make_prompt_spec(default_prompt_library(), Language::eng, 9, 3);
  const BootstrapOptions boot{1000, 5, 0.95};
  const auto run = [&](Condition cond) {
    const auto plan = enumerate_plan(corpus.templates, panel, spec, cond, "acc", "mock");
    auto backend = make_backend(backend_cfg);
    return summarize_run(execute(plan, *backend, nullptr, fast_options()).records, corpus, panel, boot);
  };
  const auto real = run(Condition::real);
  const auto control = run(Condition::control);
  const auto d = compare_runs(real, control);
  const double fr_real = std::abs(real.profile.at(Alignment::FR).centered);
  const double fr_ctrl = std::abs(control.profile.at(Alignment::FR).centered);
  const double reduction = 1.0 - fr_ctrl / fr_real;
  const double secs = seconds_since(t0);
  return {d.d_ic < 0.0 && reduction >= 0.8 && secs < 120.0,
          "d_ic=" + num(d.d_ic, 4) + " |FR| " + num(fr_real, 4) + " -> " + num(fr_ctrl, 4) + " (reduction " +
              num(100 * reduction, 3) + "%) time=" + num(secs, 3) + "s"};
}

PredictionRecord record(const std::string& entity, const std::string& sentence, const std::string& model, Label l,
                        Variant v = Variant::male, Language lang = Language::eng) {
  PredictionRecord r;
  r.run_id = "acc";
  r.model = model;
  r.language = lang;
  r.sentence_id = sentence;
  r.entity_id = entity;
  r.variant = v;
  r.label = l;
  return r;
}

Label random_label(Rng& rng, int invalid_one_in) {
  if (invalid_one_in && rng.below(static_cast<std::uint64_t>(invalid_one_in)) == 0) return Label::invalid;
  return kSentimentClasses[rng.below(3)];
}

Outcome similarity_oracles() {
  Rng rng(7);
  const std::vector<std::string> models = {"m0", "m1", "m2"};
  std::vector<std::string> sids;
  for (int s = 0; s < 10; ++s) sids.push_back("S" + std::to_string(s));
  double worst = 0.0;
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<PredictionRecord> recs;
    // cell value or NaN when the record is invalid
    std::array<std::array<std::array<double, 3>, 10>, 2> v{};
    for (int e = 0; e < 2; ++e)
      for (int s = 0; s < 10; ++s)
        for (int m = 0; m < 3; ++m) {
          const Label l = random_label(rng, 10);
          v[e][s][m] = is_valid(l) ? label_to_score(l) : std::nan("");
          recs.push_back(record(e ? "b" : "a", sids[s], models[m], l));
        }
    double sum = 0.0;
    int cols = 0;
    for (int m = 0; m < 3; ++m) {
      double dot = 0, na = 0, nb = 0;
      for (int s = 0; s < 10; ++s) {
        const double x = v[0][s][m], y = v[1][s][m];
        if (std::isnan(x) || std::isnan(y)) continue;
        dot += x * y;
        na += x * x;
        nb += y * y;
      }
      if (na > 0 && nb > 0) sum += dot / std::sqrt(na * nb), ++cols;
    }
    if (cols == 0) continue;
    const auto a = build_entity_matrix(recs, "a", sids, models);
    const auto b = build_entity_matrix(recs, "b", sids, models);
    worst = std::max(worst, std::abs(entity_similarity(a, b) - sum / cols));
    ++checked;
  }
  bool shape_ok = true;
  for (int t = 0; t < 20; ++t) {
    std::vector<PredictionRecord> recs;
    std::vector<std::string> ids;
    for (int e = 0; e < 5; ++e) ids.push_back("E" + std::to_string(e));
    for (const auto& id : ids)
      for (const auto& s : sids)
        for (const auto& m : models) recs.push_back(record(id, s, m, random_label(rng, 0)));
    for (bool scaled : {false, true}) {
      const auto sm = similarity_matrix(ids, recs, scaled);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        shape_ok &= sm.at(i, i) == (scaled ? 100.0 : 1.0);
        for (std::size_t j = 0; j < ids.size(); ++j) shape_ok &= sm.at(i, j) == sm.at(j, i);
      }
    }
  }
  return {checked == 100 && worst <= 1e-12 && shape_ok,
          std::to_string(checked) + " matrices, max |K - oracle|=" + num(worst, 3) +
              (shape_ok ? ", symmetric with unit diagonal" : ", symmetry/diagonal violated")};
}

Outcome jaccard_oracle() {
  Rng rng(8);
  int exact = 0, total = 0;
  while (total < 1000) {
    std::vector<PredictionRecord> a, b;
    using Key = std::tuple<std::string, int, int>;
    std::map<std::string, std::pair<std::set<Key>, std::set<Key>>> sets;
    const int n_ent = 1 + static_cast<int>(rng.below(4));
    const int n_sent = 1 + static_cast<int>(rng.below(8));
    for (int e = 0; e < n_ent; ++e)
      for (int s = 0; s < n_sent; ++s) {
        const std::string eid = "E" + std::to_string(e), sid = "S" + std::to_string(s);
        const Variant var = rng.below(2) ? Variant::female : Variant::male;
        const Label la = random_label(rng, 6), lb = random_label(rng, 6);
        a.push_back(record(eid, sid, "m", la, var, Language::eng));
        b.push_back(record(eid, sid, "m", lb, var, Language::spa));
        if (is_valid(la) && is_valid(lb)) {
          sets[eid].first.insert({sid, static_cast<int>(var), static_cast<int>(la)});
          sets[eid].second.insert({sid, static_cast<int>(var), static_cast<int>(lb)});
        }
      }
    if (sets.empty()) continue;
    double sum = 0.0;
    for (const auto& [eid, ab] : sets) {
      std::vector<Key> inter, uni;
      std::set_intersection(ab.first.begin(), ab.first.end(), ab.second.begin(), ab.second.end(),
                            std::back_inserter(inter));
      std::set_union(ab.first.begin(), ab.first.end(), ab.second.begin(), ab.second.end(), std::back_inserter(uni));
      sum += static_cast<double>(inter.size()) / static_cast<double>(uni.size());
    }
    ++total;
    exact += cross_language_jaccard(a, b).mean == sum / static_cast<double>(sets.size());
  }
  return {exact == total,
          std::to_string(exact) + "/" + std::to_string(total) + " pairs equal the set oracle exactly"};
}

Outcome end_to_end_determinism() {
  synth::WorkspaceSpec spec;
  spec.models = {"mock-a", "mock-b"};
  spec.languages = {"eng", "fra"};
  spec.conditions = {"real", "control"};
  spec.per_alignment = 3;
  spec.sentences = 6;
  const auto bundle_of = [&](const std::filesystem::path& dir, std::size_t abort_after, bool tear) {
    const auto cfg = load_config(synth::write_workspace(dir, spec));
    if (abort_after) {
      MatrixOptions crash;
      crash.abort_after_calls = abort_after;
      try {
        run_matrix(cfg, crash);
        fail(ErrorCode::InvalidArgument, "crash run was not aborted");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Aborted) throw;
      }
      if (tear) {
        std::ofstream out(cfg.paths.cache_dir / "cache.jsonl", std::ios::app);
        out << "{\"key\": \"torn";
      }
    }
    const auto outcome = run_matrix(cfg);
    if (outcome.exit_code != 0) fail(ErrorCode::InvalidArgument, "matrix reported failed cells");
    auto tree = synth::read_tree(outcome.bundle_dir);
    for (const auto& [name, body] : synth::read_tree(cfg.paths.cache_dir / "runs")) tree["records/" + name] = body;
    return tree;
  };
  synth::TempDir a("acc-a"), b("acc-b"), c("acc-c"), d("acc-d");
  const auto first = bundle_of(a.path(), 0, false);
  const auto second = bundle_of(b.path(), 0, false);
  const auto resumed = bundle_of(c.path(), 250, false);
  const auto torn = bundle_of(d.path(), 400, true);
  const auto rerun = bundle_of(a.path(), 0, false);
  const bool pass = !first.empty() && first == second && first == resumed && first == torn && first == rerun;
  return {pass, std::to_string(first.size()) + " files; fresh=" + (first == second ? "same" : "differs") +
                    " resume=" + (first == resumed ? "same" : "differs") + " torn-resume=" +
                    (first == torn ? "same" : "differs") + " rerun=" + (first == rerun ? "same" : "differs")};
}

// Answers plan item i with the i-th fixture response.
class FixtureBackend final : public ChatBackend {
 public:
  explicit FixtureBackend(std::vector<std::string> texts) : texts_(std::move(texts)) {}
  ChatResult complete(const ChatRequest& r) override {
    std::lock_guard lock(mu_);
    ++calls_;
    return {ChatResult::Status::ok, 200, texts_.at(r.item->sentence), {}, 0};
  }
  std::size_t calls() const override { return calls_; }

 private:
  std::mutex mu_;
  std::vector<std::string> texts_;
  std::size_t calls_ = 0;
};

Outcome parsing_robustness() {
  const auto rows = read_jsonl(std::filesystem::path(PROBE_FIXTURES_DIR) / "lexicon_responses.jsonl");
  std::map<Language, std::vector<std::pair<std::string, Label>>> by_lang;
  for (const auto& line : rows.lines) {
    by_lang[*parse_language(line.value["language"].get<std::string>())].emplace_back(
        line.value["text"].get<std::string>(), *parse_label(line.value["label"].get<std::string>()));
  }
  std::size_t wrong = 0, total = 0;
  bool rates_ok = rows.errors.empty() && by_lang.size() == kAllLanguages.size(), sizes_ok = true;
  const auto spec_for = [](Language l) { return make_prompt_spec(default_prompt_library(), l, 0, 0); };
  for (const auto& [lang, items] : by_lang) {
    sizes_ok &= items.size() >= 15;
    // one sentence per fixture row, one entity
    auto sents = synth::sentences(items.size(), lang);
    const auto plan = enumerate_plan(sents, synth::panel(1, {Alignment::CC}), spec_for(lang), Condition::real, "acc", "m");
    std::vector<std::string> texts;
    std::size_t invalid = 0;
    for (const auto& [text, label] : items) {
      texts.push_back(text);
      invalid += label == Label::invalid;
    }
    FixtureBackend backend(texts);
    const auto result = execute(plan, backend, nullptr, fast_options());
    for (std::size_t i = 0; i < items.size(); ++i) {
      ++total;
      wrong += result.records[i].label != items[i].second;
    }
    std::vector<PredictionRecord> recs = result.records;
    const double rate = inconsistency(recs).invalid_rate;
    rates_ok &= rate == static_cast<double>(invalid) / static_cast<double>(items.size());
  }
  return {wrong == 0 && rates_ok && sizes_ok, std::to_string(total - wrong) + "/" + std::to_string(total) +
                                                  " responses correct; invalid rate " +
                                                  (rates_ok ? "matches" : "differs from") + " fixture truth"};
}

}  // namespace

int main() {
  log::set_min_level(log::Level::error);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 plan cardinality", plan_cardinality},
      {"2 alignment fixtures", alignment_fixtures},
      {"3 inconsistency bounds", inconsistency_bounds},
      {"4 mann-whitney correctness", mann_whitney_correctness},
      {"5 bias detection power", bias_detection_power},
      {"6 mitigation direction", mitigation_direction},
      {"7 similarity oracles", similarity_oracles},
      {"8 jaccard oracle", jaccard_oracle},
      {"9 end-to-end determinism", end_to_end_determinism},
      {"10 parsing robustness", parsing_robustness},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
