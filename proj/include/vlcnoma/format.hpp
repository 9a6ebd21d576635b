#pragma once

#include <string>

namespace vlcnoma {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace vlcnoma
