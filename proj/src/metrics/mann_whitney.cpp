#include "probe/metrics/mann_whitney.hpp"

#include "probe/core/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace probe {

namespace {

// Twice the midranks of the pooled sample, so every rank is an integer.
std::vector<long long> doubled_midranks(const std::vector<double>& pooled, double& tie_term) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<long long> r2(n);
  tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const long long twice_mid = static_cast<long long>(i + j + 2);  // (i+1 + j+1)
    for (std::size_t k = i; k <= j; ++k) r2[order[k]] = twice_mid;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  return r2;
}

}  // namespace

MannWhitneyResult mann_whitney_one_sided(std::span<const double> x, std::span<const double> y, MwMethod method) {
  const std::size_t n1 = x.size(), n2 = y.size(), n = n1 + n2;
  if (n == 0) fail(ErrorCode::DegenerateSamples, "both samples are empty");
  if (method == MwMethod::automatic) method = n <= kExactLimit ? MwMethod::exact : MwMethod::normal;
  MannWhitneyResult res;
  res.method = method;
  if (n1 == 0 || n2 == 0) return res;

  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  double tie_term = 0.0;
  const auto r2 = doubled_midranks(pooled, tie_term);
  const auto offset2 = static_cast<long long>(n1 * (n1 + 1));  // 2 * n1(n1+1)/2
  long long rank_sum2 = 0;
  for (std::size_t i = 0; i < n1; ++i) rank_sum2 += r2[i];
  const long long u2 = rank_sum2 - offset2;
  res.u = static_cast<double>(u2) / 2.0;

  const bool all_tied = std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled[0]; });
  if (all_tied) {
    res.p = 0.5;
    return res;
  }

  if (method == MwMethod::exact) {
    if (n > 62) fail(ErrorCode::InvalidArgument, "exact Mann-Whitney is limited to small samples");
    std::uint64_t hits = 0, total = 0;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != n1) continue;
      long long s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) s += r2[i];
      }
      ++total;
      hits += (s - offset2) >= u2;
    }
    res.p = static_cast<double>(hits) / static_cast<double>(total);
    return res;
  }

  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2), dn = static_cast<double>(n);
  const double mu = dn1 * dn2 / 2.0;
  const double var = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var <= 0.0) {
    res.p = 0.5;
    return res;
  }
  const double z = (res.u - mu - 0.5) / std::sqrt(var);
  res.p = 0.5 * std::erfc(z / std::sqrt(2.0));
  return res;
}

}  // namespace probe
