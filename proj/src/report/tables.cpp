#include "probe/report/tables.hpp"

#include "probe/report/format.hpp"

namespace probe::report {

std::string inconsistency_csv(const std::vector<RunSummary>& runs) {
  std::string out = csv_row({"model", "language", "condition", "ic", "accuracy", "macro_f1", "invalid_rate",
                             "sentences", "records"});
  for (const auto& r : runs) {
    out += csv_row({r.model, std::string(to_string(r.language)), std::string(to_string(r.condition)), fmt(r.ic.ic),
                    fmt(r.scores.accuracy), fmt(r.scores.macro_f1), fmt(r.scores.invalid_rate),
                    std::to_string(r.sentences), std::to_string(r.records)});
  }
  return out;
}

std::string profiles_csv(const std::vector<AlignmentProfile>& profiles) {
  std::string out = csv_row({"group", "alignment", "n_entities", "mean", "centered", "ci_low", "ci_high"});
  for (const auto& p : profiles) {
    for (Alignment a : kAllAlignments) {
      const auto& s = p.at(a);
      if (!s.present) {
        out += csv_row({p.group, std::string(to_string(a)), "0", "", "", "", ""});
        continue;
      }
      out += csv_row({p.group, std::string(to_string(a)), std::to_string(s.n_entities), fmt(s.mean), fmt(s.centered),
                      fmt(s.ci_low), fmt(s.ci_high)});
    }
  }
  return out;
}

std::string pvalues_csv(const PValueTable& t) {
  std::vector<std::string> header{""};
  for (Alignment a : kAllAlignments) header.emplace_back(to_string(a));
  std::string out = csv_row(header);
  for (Alignment r : kAllAlignments) {
    std::vector<std::string> row{std::string(to_string(r))};
    for (Alignment c : kAllAlignments) {
      const auto& v = t.at(r, c);
      row.push_back(v ? fmt_p(*v) : "");
    }
    out += csv_row(row);
  }
  return out;
}

std::string similarity_csv(const SimilarityMatrix& m) {
  const int decimals = m.scale == 1.0 ? 4 : 2;
  std::vector<std::string> header{""};
  header.insert(header.end(), m.entity_ids.begin(), m.entity_ids.end());
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < m.entity_ids.size(); ++i) {
    std::vector<std::string> row{m.entity_ids[i]};
    for (std::size_t j = 0; j < m.entity_ids.size(); ++j) row.push_back(fmt(m.at(i, j), decimals));
    out += csv_row(row);
  }
  return out;
}

std::string jaccard_csv(const JaccardTable& t) {
  std::vector<std::string> header{""};
  header.insert(header.end(), t.keys.begin(), t.keys.end());
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < t.keys.size(); ++i) {
    std::vector<std::string> row{t.keys[i]};
    for (std::size_t j = 0; j < t.keys.size(); ++j) row.push_back(fmt(t.at(i, j)));
    out += csv_row(row);
  }
  return out;
}

std::string compass_csv(const CompassGrid& g) {
  std::string out = csv_row({"econ", "social", "n", "raw", "smoothed"});
  for (int x = 0; x < 10; ++x) {
    for (int y = 0; y < 10; ++y) {
      out += csv_row({std::to_string(x), std::to_string(y), std::to_string(g.raw[x][y].n), fmt(g.raw[x][y].mean),
                      fmt(g.smoothed[x][y].mean)});
    }
  }
  return out;
}

std::string mitigation_csv(const std::vector<MitigationDelta>& deltas) {
  std::vector<std::string> header{"model", "language", "d_ic", "d_accuracy", "d_macro_f1", "d_invalid_rate"};
  for (Alignment a : kAllAlignments) header.push_back("d_centered_" + std::string(to_string(a)));
  std::string out = csv_row(header);
  for (const auto& d : deltas) {
    std::vector<std::string> row{d.model, std::string(to_string(d.language)), fmt(d.d_ic), fmt(d.d_accuracy),
                                 fmt(d.d_macro_f1), fmt(d.d_invalid_rate)};
    for (const auto& v : d.d_centered) row.push_back(fmt(v));
    out += csv_row(row);
  }
  return out;
}

}  // namespace probe::report
