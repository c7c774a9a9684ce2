#pragma once

// Brute-force reference implementations. These stay independent of the search
// strategies they check: shattering is decided by enumerating discretized
// witnesses or whole assignments, packing by scanning every subset.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "fatshatter/class_core.hpp"
#include "fatshatter/metric_geometry.hpp"

namespace fatshatter::testing {

/// Shattering decided by quantifying r(x) over the midpoints of all pairs of
/// distinct values in column x, then asking each dichotomy for a row meeting
/// both margin inequalities. Exponential in |S|; use |S| <= 3, rows <= 8.
inline bool oracle_shattered_witness_grid(const FunctionClass& fc,
                                          const std::vector<std::size_t>& subset,
                                          double gamma) {
    const std::size_t size = subset.size();
    std::vector<std::vector<double>> candidates(size);
    for (std::size_t k = 0; k < size; ++k) {
        std::set<double> column;
        for (std::size_t row = 0; row < fc.num_functions(); ++row) {
            column.insert(fc.value(row, subset[k]));
        }
        for (auto a = column.begin(); a != column.end(); ++a) {
            for (auto b = std::next(a); b != column.end(); ++b) {
                candidates[k].push_back((*a + *b) / 2.0);
            }
        }
        if (candidates[k].empty()) return false;  // only one value: no margin possible
    }

    std::vector<std::size_t> pick(size, 0);
    for (;;) {
        bool witness_works = true;
        for (std::size_t mask = 0; mask < (std::size_t{1} << size) && witness_works; ++mask) {
            bool some_row = false;
            for (std::size_t row = 0; row < fc.num_functions() && !some_row; ++row) {
                bool fits = true;
                for (std::size_t k = 0; k < size; ++k) {
                    const double v = fc.value(row, subset[k]);
                    const double r = candidates[k][pick[k]];
                    if ((mask >> k) & 1 ? !(v >= r + gamma) : !(v <= r - gamma)) {
                        fits = false;
                        break;
                    }
                }
                some_row = fits;
            }
            witness_works = some_row;
        }
        if (witness_works) return true;
        std::size_t k = 0;
        while (k < size && ++pick[k] == candidates[k].size()) pick[k++] = 0;
        if (k == size) return false;
    }
}

/// Shattering decided by enumerating every dichotomy->row assignment, i.e.
/// |F|^(2^|S|) candidates, and checking the per-point margin directly.
inline bool oracle_shattered_assignments(const FunctionClass& fc,
                                         const std::vector<std::size_t>& subset, double gamma) {
    const std::size_t size = subset.size();
    const std::size_t dichotomies = std::size_t{1} << size;
    std::vector<std::size_t> assignment(dichotomies, 0);
    for (;;) {
        bool valid = true;
        for (std::size_t k = 0; k < size && valid; ++k) {
            double min_in = std::numeric_limits<double>::infinity();
            double max_out = -min_in;
            for (std::size_t mask = 0; mask < dichotomies; ++mask) {
                const double v = fc.value(assignment[mask], subset[k]);
                if ((mask >> k) & 1) {
                    min_in = std::min(min_in, v);
                } else {
                    max_out = std::max(max_out, v);
                }
            }
            valid = min_in - max_out >= 2.0 * gamma;
        }
        if (valid) return true;
        std::size_t b = 0;
        while (b < dichotomies && ++assignment[b] == fc.num_functions()) assignment[b++] = 0;
        if (b == dichotomies) return false;
    }
}

inline std::size_t oracle_fat_dim(const FunctionClass& fc, double gamma) {
    std::size_t best = 0;
    const std::size_t n = fc.num_points();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t k = 0; k < n; ++k) {
            if ((mask >> k) & 1) subset.push_back(k);
        }
        if (subset.size() <= best || subset.size() > 3) continue;
        if (oracle_shattered_witness_grid(fc, subset, gamma)) best = subset.size();
    }
    return best;
}

/// Exact packing number by scanning every subset for pairwise separation.
inline std::size_t oracle_packing_number(const std::vector<std::vector<double>>& points,
                                         double zeta) {
    const std::size_t n = points.size();
    std::size_t best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1) chosen.push_back(i);
        }
        bool separated = true;
        for (std::size_t a = 0; a < chosen.size() && separated; ++a) {
            for (std::size_t b = a + 1; b < chosen.size(); ++b) {
                if (distance(points[chosen[a]], points[chosen[b]], 2) <= zeta) {
                    separated = false;
                    break;
                }
            }
        }
        if (separated) best = std::max(best, chosen.size());
    }
    return best;
}

}  // namespace fatshatter::testing
