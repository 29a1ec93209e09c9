#pragma once

#include <string>

namespace dengue {

/// Shortest decimal that round-trips the exact double; locale-independent.
std::string format_double(double v);

} // namespace dengue
