#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "hausmet/errors.hpp"

namespace hausmet {

// Shortest decimal that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw InternalError("format_double: to_chars failed");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw InputError("not a number: '" + std::string(s) + "'");
    return v;
}

}  // namespace hausmet
