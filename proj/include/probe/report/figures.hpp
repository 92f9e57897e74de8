#pragma once

#include "probe/metrics/alignment_tests.hpp"
#include "probe/metrics/compass.hpp"
#include "probe/metrics/jaccard.hpp"
#include "probe/metrics/profile.hpp"
#include "probe/metrics/similarity.hpp"
#include "probe/report/svg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace probe::report {

struct ScatterPoint {
  double ic = 0.0;
  double accuracy = 0.0;
};

struct ScatterPair {
  std::string label;  // "model/language"
  std::optional<ScatterPoint> real;
  std::optional<ScatterPoint> control;
};

// x = inconsistency, y = accuracy; control markers are translucent and joined
// to their real counterpart.
std::string render_scatter_accuracy_vs_ic(const std::vector<ScatterPair>& pairs, const Style& style = default_style());

// Centered alignment means over FL..BT with shaded confidence bands, one
// curve per profile.
std::string render_alignment_curves(const std::vector<AlignmentProfile>& profiles, const std::string& title,
                                    const Style& style = default_style());

enum class Ramp { diverging, sequential, pvalue };

struct Heatmap {
  std::string title;
  std::vector<std::string> row_labels;  // top to bottom
  std::vector<std::string> col_labels;  // left to right
  std::vector<std::optional<double>> cells;  // row-major, nullopt = blank
  Ramp ramp = Ramp::diverging;
  int decimals = 4;
  double color_scale = 1.0;  // colour is looked up at cell / color_scale
};

// Blank cells are hatched; p-value maps highlight cells below the
// significance threshold.
std::string render_heatmap(const Heatmap& h, const Style& style = default_style());

Heatmap similarity_heatmap(const SimilarityMatrix& m, const std::string& title);
Heatmap jaccard_heatmap(const JaccardTable& t, const std::string& title);
Heatmap pvalue_heatmap(const PValueTable& t, const std::string& title);
// Rows run from social 9 (top) to 0, columns from econ 0 to 9.
Heatmap compass_heatmap(const CompassGrid& g, bool smoothed, const std::string& title);

}  // namespace probe::report
