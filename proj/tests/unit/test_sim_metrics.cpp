#include "probe/core/errors.hpp"
#include "probe/metrics/alignment_tests.hpp"
#include "probe/metrics/compare.hpp"
#include "probe/metrics/compass.hpp"
#include "probe/metrics/jaccard.hpp"
#include "probe/metrics/mann_whitney.hpp"
#include "probe/metrics/profile.hpp"
#include "probe/metrics/scores.hpp"
#include "probe/metrics/similarity.hpp"
#include "probe/sim/simulator.hpp"

#include "../support/synth.hpp"

#include <catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <set>
#include <tuple>

using namespace probe;
using Catch::Approx;

namespace {

PredictionRecord rec(std::string entity, std::string sentence, Label l, std::string model = "m",
                     Variant v = Variant::male, Language lang = Language::eng) {
  PredictionRecord r;
  r.run_id = "r";
  r.model = std::move(model);
  r.language = lang;
  r.sentence_id = std::move(sentence);
  r.entity_id = std::move(entity);
  r.variant = v;
  r.label = l;
  r.raw_text = std::string(to_string(l));
  return r;
}

Label score_label(int s) { return kSentimentClasses[static_cast<std::size_t>(s + 1)]; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// Direct pair counting over every relabeling of the pooled sample.
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
  const std::size_t n = pool.size();
  long long hits = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != static_cast<int>(x.size())) continue;
    std::vector<double> a, b;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? a : b).push_back(pool[i]);
    ++total;
    if (twice_u(a, b) >= observed) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return d / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("simulator distribution") {
  for (Label gold : kSentimentClasses) {
    for (double acc : {0.0, 0.3, 0.8, 1.0}) {
      for (double b : {-1.0, -0.5, 0.0, 0.4, 1.0}) {
        const auto d = label_distribution(gold, acc, b);
        REQUIRE(d[0] + d[1] + d[2] == Approx(1.0).margin(1e-12));
        for (double p : d) REQUIRE(p >= -1e-15);
        if (acc == 1.0) REQUIRE(d[class_index(gold)] == 1.0);
      }
    }
  }
  const auto d = label_distribution(Label::neutral, 0.7, -0.5);
  CHECK(d[0] == Approx(0.15 + 0.15));
  CHECK(d[1] == Approx(0.7 - 0.15));
  CHECK(d[2] == Approx(0.15));
  CHECK(label_distribution(Label::negative, 0.7, -1.0) == label_distribution(Label::negative, 0.7, 0.0));
}

TEST_CASE("draw_label follows the distribution and moves only shifted mass") {
  Rng rng(3);
  std::array<int, 3> hist{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++hist[class_index(draw_label(Label::positive, 0.6, 0.0, rng.uniform01()))];
  // symmetric error split within 3 sigma
  const double sigma = std::sqrt(n * 0.2 * 0.8);
  CHECK(std::abs(hist[0] - hist[1]) < 3 * std::sqrt(2.0) * sigma);
  CHECK(std::abs(hist[2] - 0.6 * n) < 3 * std::sqrt(n * 0.6 * 0.4));
  for (int i = 0; i < 2000; ++i) {
    const double u = rng.uniform01();
    const Label base = draw_label(Label::neutral, 0.7, 0.0, u);
    const Label shifted = draw_label(Label::neutral, 0.7, -0.6, u);
    if (base != shifted) REQUIRE(shifted == Label::negative);
  }
}

TEST_CASE("simulated FR bias lowers FR means") {
  auto panel = synth::panel(30, {Alignment::CC, Alignment::FR});
  const auto sents = synth::sentences(120);
  SimulatorParams p;
  p.seed = 4;
  p.set_shift(Alignment::FR, -0.8);
  const auto real = simulate_run(sents, panel, p, Condition::real, "r", "m");
  REQUIRE(real.size() == 120 * 60);
  auto groups = means_by_alignment(entity_means(real), panel);
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
  CHECK(mean(groups[index_of(Alignment::FR)]) < mean(groups[index_of(Alignment::CC)]));
  // name-keyed: control names carry no bias
  const auto control = simulate_run(sents, panel, p, Condition::control, "r", "m");
  auto cg = means_by_alignment(entity_means(control), panel);
  CHECK(std::abs(mean(cg[index_of(Alignment::FR)]) - mean(cg[index_of(Alignment::CC)])) < 0.05);
  CHECK(simulate_run(sents, panel, p, Condition::real, "r", "m") == real);
  CHECK(validate_params(params_from_json(to_json(p))).empty());
  p.accuracy = 1.5;
  CHECK_FALSE(validate_params(p).empty());
}

TEST_CASE("entropy and inconsistency") {
  CHECK(entropy(LabelCounts{4, 0, 0}) == 0.0);
  CHECK(entropy(LabelCounts{5, 5, 5}) == Approx(1.584962500721156).epsilon(1e-15));
  CHECK(entropy(LabelCounts{2, 0, 2}) == Approx(1.0));
  CHECK(entropy(LabelCounts{1, 2, 3}) == Approx(entropy(LabelCounts{10, 20, 30})));
  CHECK(code_of([] { entropy(LabelCounts{0, 0, 0}); }) == ErrorCode::EmptySet);
  CHECK(label_to_score(Label::neutral) == 0);
  CHECK(code_of([] { label_to_score(Label::invalid); }) == ErrorCode::InvalidLabel);

  std::vector<PredictionRecord> rs = {rec("a", "S1", Label::positive), rec("b", "S1", Label::negative),
                                      rec("a", "S2", Label::neutral), rec("b", "S2", Label::neutral),
                                      rec("c", "S2", Label::invalid)};
  const auto ic = inconsistency(rs);
  CHECK(ic.ic == Approx(0.5));
  CHECK(ic.invalid_rate == Approx(0.2));
  CHECK(ic.covered == 2);
  std::vector<PredictionRecord> bad = {rec("a", "S1", Label::invalid)};
  CHECK(code_of([&] { inconsistency(bad); }) == ErrorCode::NoValidRecords);
  rs[1].model = "other";
  CHECK(code_of([&] { inconsistency(rs); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("IC bounds over random label sets") {
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    std::vector<PredictionRecord> rs;
    bool unanimous = true;
    for (int s = 0; s < 4; ++s) {
      const Label first = kSentimentClasses[rng.below(3)];
      const bool same = rng.below(2);
      for (int e = 0; e < 5; ++e) {
        const Label l = same ? first : kSentimentClasses[rng.below(3)];
        rs.push_back(rec("E" + std::to_string(e), "S" + std::to_string(s), l));
      }
      for (int e = 1; e < 5; ++e) unanimous &= rs[rs.size() - 5 + e].label == rs[rs.size() - 5].label;
    }
    const double ic = inconsistency(rs).ic;
    REQUIRE(ic >= 0.0);
    REQUIRE(ic <= std::log2(3.0) + 1e-12);
    REQUIRE((ic == 0.0) == unanimous);
  }
}

TEST_CASE("classification scores") {
  std::array<std::array<std::size_t, 4>, 3> c{};
  c[0] = {5, 0, 0, 0};
  c[1] = {0, 0, 5, 0};
  c[2] = {0, 0, 5, 0};
  auto s = classification_scores(c);
  CHECK(s.macro_f1 == Approx((1.0 + 0.0 + 2.0 / 3.0) / 3.0));
  CHECK(s.accuracy == Approx(10.0 / 15.0));
  c = {};
  for (auto& row : c) row[3] = 4;
  s = classification_scores(c);
  CHECK(s.accuracy == 0.0);
  CHECK(s.macro_f1 == 0.0);
  CHECK(s.invalid_rate == 1.0);

  const auto corpus = synth::corpus(3, {Language::eng});
  std::vector<PredictionRecord> rs;
  for (const auto& t : corpus.templates) rs.push_back(rec("a", t.id, t.gold_label));
  s = accuracy_and_macro_f1(rs, corpus);
  CHECK(s.accuracy == 1.0);
  CHECK(s.macro_f1 == 1.0);
}

TEST_CASE("profiles center on the group mean and reproduce") {
  auto panel = synth::panel(6);
  SimulatorParams p;
  p.seed = 1;
  p.set_shift(Alignment::FR, -0.8);
  const auto rs = simulate_run(synth::sentences(30), panel, p, Condition::real, "r", "m");
  BootstrapOptions boot{400, 77, 0.95};
  const auto prof = alignment_profile(rs, panel, boot, "eng");
  double sum = 0;
  for (const auto& s : prof.stats) {
    REQUIRE(s.present);
    sum += s.centered;
    CHECK(s.ci_low <= s.ci_high);
  }
  CHECK(std::abs(sum) < 1e-12);
  for (Alignment a : kAllAlignments) {
    if (a != Alignment::FR) CHECK(prof.at(Alignment::FR).centered < prof.at(a).centered);
  }
  const auto again = alignment_profile(rs, panel, boot, "eng");
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(again.stats[i].ci_low == prof.stats[i].ci_low);
    CHECK(again.stats[i].ci_high == prof.stats[i].ci_high);
  }

  SimulatorParams exact;
  exact.accuracy = 1.0;
  const auto flat = alignment_profile(simulate_run(synth::sentences(9), panel, exact, Condition::real, "r", "m"),
                                      panel, boot);
  for (const auto& s : flat.stats) CHECK(std::abs(s.centered) < 1e-12);

  std::array<std::vector<double>, 8> groups{};
  groups[0] = {0.5};
  groups[6] = {-0.5, 0.1};
  const auto partial = profile_from_groups(groups, boot, "g");
  CHECK_FALSE(partial.at(Alignment::CC).present);
  CHECK(partial.at(Alignment::FL).centered == Approx(0.35));
  CHECK(code_of([&] { profile_from_groups({}, boot, "g"); }) == ErrorCode::EmptyAlignment);
  const std::vector<double> q = {1, 2, 3, 4};
  CHECK(quantile_sorted(q, 0.5) == 2.5);
  CHECK(quantile_sorted(q, 0.25) == Approx(1.75));
}

TEST_CASE("entity similarity") {
  std::vector<PredictionRecord> rs = {
      rec("a", "S1", Label::positive, "m1"), rec("a", "S2", Label::positive, "m1"),
      rec("a", "S1", Label::neutral, "m2"),  rec("a", "S2", Label::positive, "m2"),
      rec("b", "S1", Label::positive, "m1"), rec("b", "S2", Label::neutral, "m1"),
      rec("b", "S1", Label::neutral, "m2"),  rec("b", "S2", Label::positive, "m2"),
  };
  const std::vector<std::string> sids = {"S1", "S2"}, mids = {"m1", "m2"};
  const auto a = build_entity_matrix(rs, "a", sids, mids);
  const auto b = build_entity_matrix(rs, "b", sids, mids);
  CHECK(entity_similarity(a, b) == Approx((1 / std::sqrt(2.0) + 1) / 2));
  CHECK(entity_similarity(a, a) == Approx(1.0));
  auto z = a;
  for (auto& c : z.cells) c = 0.0;
  CHECK(code_of([&] { entity_similarity(z, a); }) == ErrorCode::AllZeroColumns);
  auto shape = a;
  shape.rows = {"S1", "S9"};
  CHECK(code_of([&] { entity_similarity(shape, a); }) == ErrorCode::ShapeMismatch);

  const auto m = similarity_matrix({"a", "b"}, rs, true);
  CHECK(m.at(0, 0) == 100.0);
  CHECK(m.at(0, 1) == Approx(100 * (1 / std::sqrt(2.0) + 1) / 2));
}

TEST_CASE("similarity against a cosine oracle") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    std::vector<PredictionRecord> rs;
    std::vector<std::string> sids, mids = {"m0", "m1", "m2"};
    std::array<std::array<std::array<int, 3>, 6>, 2> v{};
    for (int s = 0; s < 6; ++s) sids.push_back("S" + std::to_string(s));
    for (int e = 0; e < 2; ++e)
      for (int s = 0; s < 6; ++s)
        for (int m = 0; m < 3; ++m) {
          v[e][s][m] = static_cast<int>(rng.below(3)) - 1;
          rs.push_back(rec(e ? "b" : "a", sids[s], score_label(v[e][s][m]), mids[m]));
        }
    double sum = 0;
    int cols = 0;
    for (int m = 0; m < 3; ++m) {
      std::vector<double> ca, cb;
      for (int s = 0; s < 6; ++s) {
        ca.push_back(v[0][s][m]);
        cb.push_back(v[1][s][m]);
      }
      const double c = cosine(ca, cb);
      if (std::isfinite(c)) {
        sum += c;
        ++cols;
      }
    }
    const auto ma = build_entity_matrix(rs, "a", sids, mids);
    const auto mb = build_entity_matrix(rs, "b", sids, mids);
    if (cols == 0) {
      REQUIRE(code_of([&] { entity_similarity(ma, mb); }) == ErrorCode::AllZeroColumns);
      continue;
    }
    REQUIRE(entity_similarity(ma, mb) == Approx(sum / cols).margin(1e-12));
    REQUIRE(entity_similarity(mb, ma) == Approx(entity_similarity(ma, mb)).margin(1e-15));
  }
}

TEST_CASE("cross-language jaccard") {
  std::vector<PredictionRecord> a, b;
  const Label la[4] = {Label::positive, Label::neutral, Label::negative, Label::neutral};
  const Label lb[4] = {Label::positive, Label::neutral, Label::negative, Label::positive};
  for (int s = 0; s < 4; ++s) {
    a.push_back(rec("e", "S" + std::to_string(s), la[s]));
    b.push_back(rec("e", "S" + std::to_string(s), lb[s], "m", Variant::male, Language::fra));
  }
  CHECK(cross_language_jaccard(a, b).mean == Approx(0.6));
  CHECK(cross_language_jaccard(a, a).mean == 1.0);
  auto inv = b;
  for (auto& r : inv) r.label = Label::invalid;
  CHECK(code_of([&] { cross_language_jaccard(a, inv); }) == ErrorCode::NoOverlap);

  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<PredictionRecord> x, y;
    std::map<std::string, std::pair<std::set<std::tuple<std::string, int, int>>, std::set<std::tuple<std::string, int, int>>>> sets;
    for (int e = 0; e < 3; ++e)
      for (int s = 0; s < 5; ++s)
        for (int v = 0; v < 2; ++v) {
          const std::string eid = "E" + std::to_string(e), sid = "S" + std::to_string(s);
          const Label l1 = rng.below(8) ? kSentimentClasses[rng.below(3)] : Label::invalid;
          const Label l2 = rng.below(8) ? kSentimentClasses[rng.below(3)] : Label::invalid;
          x.push_back(rec(eid, sid, l1, "m", v ? Variant::female : Variant::male));
          y.push_back(rec(eid, sid, l2, "m", v ? Variant::female : Variant::male, Language::zho));
          if (l1 != Label::invalid && l2 != Label::invalid) {
            sets[eid].first.insert({sid, v, static_cast<int>(l1)});
            sets[eid].second.insert({sid, v, static_cast<int>(l2)});
          }
        }
    double sum = 0;
    for (const auto& [eid, ab] : sets) {
      std::size_t inter = 0;
      for (const auto& k : ab.first) inter += ab.second.count(k);
      sum += static_cast<double>(inter) / static_cast<double>(ab.first.size() + ab.second.size() - inter);
    }
    const auto got = cross_language_jaccard(x, y).mean;
    REQUIRE(got == Approx(sum / static_cast<double>(sets.size())).margin(1e-12));
    REQUIRE(got >= 0.0);
    REQUIRE(got <= 1.0);
  }
}

TEST_CASE("compass grid") {
  auto panel = synth::panel(1, {Alignment::CC});
  panel[0].compass = CompassPoint{2.4, 7.9};
  std::map<std::string, double> means = {{panel[0].id, -1.0}};
  auto g = compass_grid(panel, means);
  CHECK(g.raw[2][7].mean == -1.0);
  CHECK(g.smoothed[2][7].mean == -1.0);
  CHECK_FALSE(g.smoothed[1][6].mean);
  CompassOptions spread;
  spread.spread_into_empty = true;
  g = compass_grid(panel, means, spread);
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) CHECK(g.smoothed[2 + di][7 + dj].mean == -1.0);
  CHECK_FALSE(g.smoothed[4][7].mean);
  CHECK(compass_index(10.0) == 9);
  CHECK(compass_index(-0.1) == 0);

  auto many = synth::panel(20);
  std::map<std::string, double> m2;
  Rng rng(2);
  for (const auto& e : many) m2[e.id] = rng.uniform01() * 2 - 1;
  many[0].compass.reset();
  g = compass_grid(many, m2);
  CHECK(g.skipped == 1);
  CHECK(g.placed == many.size() - 1);
  double lo = 1e9, hi = -1e9;
  for (const auto& row : g.raw)
    for (const auto& c : row)
      if (c.mean) lo = std::min(lo, *c.mean), hi = std::max(hi, *c.mean);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      REQUIRE(g.raw[i][j].mean.has_value() == g.smoothed[i][j].mean.has_value());
      if (g.smoothed[i][j].mean) {
        REQUIRE(*g.smoothed[i][j].mean >= lo - 1e-12);
        REQUIRE(*g.smoothed[i][j].mean <= hi + 1e-12);
      }
    }
}

TEST_CASE("mann whitney examples") {
  const std::vector<double> lo = {1, 2, 3}, hi = {4, 5, 6};
  auto r = mann_whitney_one_sided(lo, hi);
  CHECK(r.u == 0.0);
  CHECK(r.p == 1.0);
  r = mann_whitney_one_sided(hi, lo);
  CHECK(r.u == 9.0);
  CHECK(r.p == Approx(0.05).margin(1e-15));
  CHECK(r.method == MwMethod::exact);
  const std::vector<double> one = {0.3};
  CHECK(mann_whitney_one_sided(one, one).p == 0.5);
  CHECK(mann_whitney_one_sided(one, {}).p == 1.0);
  CHECK(code_of([] { mann_whitney_one_sided({}, {}); }) == ErrorCode::DegenerateSamples);
  std::vector<double> big(20, 0.0), big2(20, 1.0);
  CHECK(mann_whitney_one_sided(big, big2).method == MwMethod::normal);
}

TEST_CASE("exact mann whitney matches brute force, ties included") {
  Rng rng(13);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n1 = 1 + rng.below(6), n2 = 1 + rng.below(6);
    std::vector<double> x(n1), y(n2);
    for (auto& v : x) v = static_cast<double>(rng.below(4));
    for (auto& v : y) v = static_cast<double>(rng.below(4));
    std::set<double> distinct(x.begin(), x.end());
    distinct.insert(y.begin(), y.end());
    if (distinct.size() == 1) continue;
    const auto fwd = mann_whitney_one_sided(x, y, MwMethod::exact);
    REQUIRE(fwd.p == Approx(brute_force_p(x, y)).margin(1e-12));
    // p(x>y) + p(y>x) = 1 + P(U = u)
    const auto rev = mann_whitney_one_sided(y, x, MwMethod::exact);
    const double at_u = fwd.p + rev.p - 1.0;
    REQUIRE(at_u > 0.0);
    REQUIRE(at_u <= 1.0);
  }
}

TEST_CASE("pairwise tables") {
  std::array<std::vector<double>, 8> groups{};
  groups[index_of(Alignment::LL)] = {0.9, 0.8, 0.85, 0.95};
  groups[index_of(Alignment::FR)] = {-0.2, -0.1, 0.0, -0.3};
  const auto t = pairwise_tests_from_groups(groups);
  CHECK(t.at(Alignment::LL, Alignment::FR).value() == Approx(1.0 / 70.0));
  CHECK(t.at(Alignment::FR, Alignment::LL).value() == 1.0);
  CHECK_FALSE(t.at(Alignment::LL, Alignment::LL));
  CHECK_FALSE(t.at(Alignment::CC, Alignment::LL));
  std::array<std::vector<double>, 8> single{};
  single[0] = {1.0};
  CHECK(code_of([&] { pairwise_tests_from_groups(single); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("mitigation deltas") {
  auto panel = synth::panel(10);
  const auto corpus = synth::corpus(30, {Language::eng});
  SimulatorParams p;
  p.seed = 6;
  p.accuracy = 0.75;
  p.set_shift(Alignment::FR, -0.7);
  p.set_shift(Alignment::LL, 0.5);
  BootstrapOptions boot{200, 1, 0.95};
  const auto real = summarize_run(simulate_run(corpus.templates, panel, p, Condition::real, "r", "m"), corpus, panel, boot);
  const auto ctrl =
      summarize_run(simulate_run(corpus.templates, panel, p, Condition::control, "r", "m"), corpus, panel, boot);
  const auto d = compare_runs(real, ctrl);
  CHECK(d.d_ic < 0.0);
  CHECK(d.d_accuracy >= 0.0);
  const auto same = compare_runs(real, real);
  CHECK(same.d_ic == 0.0);
  CHECK(same.d_accuracy == 0.0);
  for (const auto& c : same.d_centered) CHECK(c.value() == 0.0);
  auto other = ctrl;
  other.sentences += 1;
  CHECK(code_of([&] { compare_runs(real, other); }) == ErrorCode::ShapeMismatch);
}
