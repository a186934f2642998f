#pragma once

#include <string>
#include <vector>

namespace dce {

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);
std::string format_list(const std::vector<double>& values);

} // namespace dce
