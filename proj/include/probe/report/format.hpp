#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace probe::report {

// Shared by tables and figures so both always show the same digits.
std::string fmt(double v, int decimals = 4);
std::string fmt(const std::optional<double>& v, int decimals = 4);  // empty string for nullopt
// p-values: fixed with 4 decimals down to 1e-4, scientific below.
std::string fmt_p(double p);

std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string>& fields);

std::string xml_escape(std::string_view s);

}  // namespace probe::report
