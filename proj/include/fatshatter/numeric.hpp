#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>

namespace fatshatter {

/// Smallest positive integer m with m >= threshold, tolerant of the few ulps
/// that formula evaluation can add to an exactly attained bound.
inline std::size_t least_int_geq(double threshold) {
    const double nudged = threshold * (1.0 - 1e-12);
    const double c = std::ceil(nudged);
    if (c < 1.0) return 1;
    return static_cast<std::size_t>(c);
}

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        double parsed = 0.0;
        std::sscanf(buf, "%lf", &parsed);
        if (parsed == v) break;
    }
    return buf;
}

}  // namespace fatshatter
