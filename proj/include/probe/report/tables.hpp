#pragma once

#include "probe/metrics/alignment_tests.hpp"
#include "probe/metrics/compare.hpp"
#include "probe/metrics/compass.hpp"
#include "probe/metrics/jaccard.hpp"
#include "probe/metrics/similarity.hpp"

#include <string>
#include <vector>

namespace probe::report {

std::string inconsistency_csv(const std::vector<RunSummary>& runs);
std::string profiles_csv(const std::vector<AlignmentProfile>& profiles);
// Header ",FL,LL,...,BT"; one row per alignment; blank diagonal.
std::string pvalues_csv(const PValueTable& t);
std::string similarity_csv(const SimilarityMatrix& m);
std::string jaccard_csv(const JaccardTable& t);
std::string compass_csv(const CompassGrid& g);
std::string mitigation_csv(const std::vector<MitigationDelta>& deltas);

}  // namespace probe::report
