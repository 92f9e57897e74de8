#include "probe/catalog/alignment.hpp"

#include "probe/core/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace probe {

std::string_view to_string(Alignment a) {
  static constexpr std::array<std::string_view, 8> kNames = {"FL", "LL", "CL", "CC",
                                                             "CR", "RR", "FR", "BT"};
  return kNames[index_of(a)];
}

std::optional<Alignment> parse_alignment(std::string_view code) {
  for (Alignment a : kAllAlignments) {
    if (to_string(a) == code) return a;
  }
  return std::nullopt;
}

std::optional<int> alignment_score(Alignment a) {
  if (a == Alignment::BT) return std::nullopt;
  return static_cast<int>(index_of(a)) - 3;
}

std::optional<Alignment> alignment_from_score(int score) {
  if (score < -3 || score > 3) return std::nullopt;
  return kAllAlignments[static_cast<std::size_t>(score + 3)];
}

Alignment compute_alignment(std::span<const Alignment> raw) {
  if (raw.empty()) fail(ErrorCode::InvalidArgument, "compute_alignment: empty alignment list");
  if (raw.size() == 1) return raw.front();

  int sum = 0;
  int count = 0;
  for (Alignment a : raw) {
    if (auto s = alignment_score(a)) {
      sum += *s;
      ++count;
    }
  }
  if (count == 0) return Alignment::BT;

  // Integer arithmetic keeps the .5 boundary exact: |avg| = |sum|/count and
  // rounding away from zero is ceil on the magnitude when there is a fraction
  // of at least one half, floor otherwise.
  const int mag = std::abs(sum);
  const int whole = mag / count;
  const int rem = mag % count;
  const int rounded_mag = (2 * rem >= count) ? whole + 1 : whole;
  const int rounded = sum < 0 ? -rounded_mag : rounded_mag;
  return *alignment_from_score(rounded);
}

}  // namespace probe
