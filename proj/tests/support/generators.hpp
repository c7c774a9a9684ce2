#pragma once

// Seeded instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "fatshatter/class_core.hpp"
#include "fatshatter/rng.hpp"

namespace fatshatter::testing {

/// Random {0,1}-valued class with distinct rows.
inline FunctionClass random_binary_class(Rng& rng, std::size_t max_points,
                                         std::size_t max_rows) {
    const std::size_t points = 1 + rng.next_below(max_points);
    const std::uint64_t patterns = std::uint64_t{1} << points;
    std::size_t rows = 2 + rng.next_below(max_rows - 1);
    rows = std::min<std::size_t>(rows, patterns);

    std::set<std::uint64_t> chosen;
    while (chosen.size() < rows) chosen.insert(rng.next_u64() & (patterns - 1));
    std::vector<std::vector<double>> values;
    values.reserve(chosen.size());
    for (std::uint64_t pattern : chosen) {
        std::vector<double> row(points);
        for (std::size_t j = 0; j < points; ++j) row[j] = (pattern >> j) & 1 ? 1.0 : 0.0;
        values.push_back(std::move(row));
    }
    return FunctionClass(std::move(values), 0.0, 1.0);
}

/// Random class with values on the dyadic grid {0, 1/8, ..., 1}; exact in
/// double arithmetic, so margin and distance computations carry no rounding.
inline FunctionClass random_dyadic_class(Rng& rng, std::size_t max_points,
                                         std::size_t max_rows) {
    const std::size_t points = 1 + rng.next_below(max_points);
    const std::size_t rows = 2 + rng.next_below(max_rows - 1);
    std::set<std::vector<double>> chosen;
    std::size_t attempts = 0;
    while (chosen.size() < rows && attempts < 16 * rows) {
        std::vector<double> row(points);
        for (auto& v : row) v = static_cast<double>(rng.next_below(9)) / 8.0;
        chosen.insert(std::move(row));
        ++attempts;
    }
    std::vector<std::vector<double>> values(chosen.begin(), chosen.end());
    return FunctionClass(std::move(values), 0.0, 1.0);
}

/// Random categorical distribution whose weights sum to 1 within validation
/// tolerance (the last weight absorbs the rounding).
inline Distribution random_distribution(Rng& rng, std::size_t n) {
    std::vector<double> weights(n);
    double total = 0.0;
    for (auto& w : weights) {
        w = rng.next_double() + 1e-3;
        total += w;
    }
    for (auto& w : weights) w /= total;
    if (n > 1) {
        double partial = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) partial += weights[i];
        weights[n - 1] = std::max(0.0, 1.0 - partial);
    } else {
        weights[0] = 1.0;
    }
    return Distribution(std::move(weights));
}

/// Random double sample of 2m indices into [0, points).
inline std::vector<std::size_t> random_sample_indices(Rng& rng, std::size_t points,
                                                      std::size_t m) {
    std::vector<std::size_t> indices(2 * m);
    for (auto& idx : indices) idx = rng.next_below(points);
    return indices;
}

/// Random vector of length 2m on the grid {-1, -7/8, ..., 1}.
inline std::vector<double> random_increment_vector(Rng& rng, std::size_t m) {
    std::vector<double> h(2 * m);
    for (auto& v : h) {
        v = (static_cast<double>(rng.next_below(17)) - 8.0) / 8.0;
    }
    return h;
}

}  // namespace fatshatter::testing
