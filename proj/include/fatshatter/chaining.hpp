#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fatshatter/metric_geometry.hpp"

namespace fatshatter {

/// Multiscale decomposition of a separated net: nested levels G_0 .. G_l,
/// per-level projections, increment sets H_j = { g - proj_{j-1}(g) }, and the
/// telescoping decomposition of every net point into one summand per level.
struct ChainStructure {
    std::size_t depth = 0;  // l
    double epsilon = 0.0;
    double range_width = 0.0;
    /// Ambient net points in construction order; levels index into this list.
    std::vector<std::vector<double>> net_points;
    /// levels[j] = indices of the members of G_j, construction order.
    std::vector<std::vector<std::size_t>> levels;
    /// projections[j][i] = position within levels[j] of the projection of net
    /// point i, the earliest member within range_width * 2^-j.
    std::vector<std::vector<std::size_t>> projections;
    /// increments[j] = the distinct vectors of H_j, first-occurrence order.
    std::vector<std::vector<std::vector<double>>> increments;
    /// decomposition[i] = the l+1 summands of net point i, one per level.
    std::vector<std::vector<std::vector<double>>> decomposition;
};

/// floor(log2(range_width / epsilon)) + 4, for 0 < epsilon < range_width.
std::size_t chain_depth(double range_width, double epsilon);

/// Builds the inductive net hierarchy over `net` (which must be at scale
/// epsilon/8) and derives increments and decompositions.
ChainStructure build_chain(const SeparatedNet& net, double range_width, double epsilon);

struct ChainVerification {
    bool decomposition_ok = false;   // summands live in their H_j and sum to the point
    bool increment_bounds_ok = false;  // halved-increment norm within the per-level cap
    bool level_sizes_ok = false;     // |H_j| <= |G_j| with G_j separated at its scale
    std::vector<std::string> witnesses;

    bool all_pass() const { return decomposition_ok && increment_bounds_ok && level_sizes_ok; }
};

/// Re-checks the three chain properties against vectors of length 2m.
ChainVerification verify_chain(const ChainStructure& chain, std::size_t m);

/// sum_{i=1}^{m} (h(i) - h(m+i))^2 for a vector of length 2m.
double increment_halved_norm(std::span<const double> h, std::size_t m);

}  // namespace fatshatter
