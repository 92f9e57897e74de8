#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace probe {

// Eight political alignment categories. Declaration order is the left-to-right
// plotting order, with Big Tent last.
enum class Alignment { FL, LL, CL, CC, CR, RR, FR, BT };

inline constexpr std::array<Alignment, 8> kAllAlignments = {
    Alignment::FL, Alignment::LL, Alignment::CL, Alignment::CC,
    Alignment::CR, Alignment::RR, Alignment::FR, Alignment::BT};

inline constexpr std::size_t index_of(Alignment a) { return static_cast<std::size_t>(a); }

std::string_view to_string(Alignment a);
std::optional<Alignment> parse_alignment(std::string_view code);

// -3..+3 scale; BT has no position on it.
std::optional<int> alignment_score(Alignment a);
std::optional<Alignment> alignment_from_score(int score);

// Collapses a party's alignment list into one label: singletons pass through,
// BT is dropped unless it is all there is, and the mean position is rounded
// away from the centre (exact halves go outward too).
// Precondition: raw is non-empty.
Alignment compute_alignment(std::span<const Alignment> raw);

}  // namespace probe
