#pragma once

#include <span>

namespace probe {

enum class MwMethod { automatic, exact, normal };

struct MannWhitneyResult {
  double u = 0.0;  // pairs with x > y, ties counted half
  double p = 1.0;  // P(U >= u) under exchangeability
  MwMethod method = MwMethod::exact;
};

// One-sided test of "x tends to be larger than y" using midranks. automatic
// enumerates the permutation distribution when |x| + |y| <= 12 and otherwise
// uses the normal approximation with tie and continuity correction. All values
// tied gives p = 0.5; one empty sample gives p = 1. DegenerateSamples when
// both are empty.
MannWhitneyResult mann_whitney_one_sided(std::span<const double> x, std::span<const double> y,
                                         MwMethod method = MwMethod::automatic);

inline constexpr std::size_t kExactLimit = 12;

}  // namespace probe
