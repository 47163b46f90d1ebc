#pragma once

#include <string>

namespace anticrit {

// Shortest decimal that parses back to exactly `v`; negative zero prints as 0.
std::string format_double(double v);

}  // namespace anticrit
