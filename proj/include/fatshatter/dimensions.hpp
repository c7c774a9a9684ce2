#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fatshatter/class_core.hpp"

namespace fatshatter {

/// Certificate that a subset S of domain points is gamma-shattered.
///
/// `assignment[mask]` names the row realizing the dichotomy whose bit k marks
/// membership of subset[k]; `witness[k]` is the level r(subset[k]) that every
/// assigned row clears by at least gamma on the prescribed side.
struct ShatterCertificate {
    std::vector<std::size_t> subset;
    std::vector<double> witness;
    double gamma = 0.0;
    std::vector<std::size_t> assignment;  // indexed by dichotomy bitmask, size 2^|S|
};

struct ShatterOptions {
    /// Hard cap on |S|; 2^|S| dichotomies are enumerated.
    std::size_t max_subset_size = 20;
    /// Margin comparisons accept min_in - max_out >= 2*gamma - slack. Zero for
    /// exactly-representable values; raise for classes with computed entries.
    double slack = 0.0;
};

/// Searches for a dichotomy->row assignment with per-point margin at least
/// 2*gamma; the witness is recovered as the midpoint of the two margin
/// statistics. Backtracks over rows with per-point pruning.
std::optional<ShatterCertificate> is_shattered(const FunctionClass& fc,
                                               const std::vector<std::size_t>& subset,
                                               double gamma, const ShatterOptions& opts = {});

/// Largest |S| with S gamma-shattered; 0 when no singleton qualifies. Subset
/// sizes are searched in increasing order, stopping at the first empty size
/// (a subset of a shattered set is itself shattered).
std::size_t fat_dim(const FunctionClass& fc, double gamma, const ShatterOptions& opts = {});

/// Classical VC dimension of a {0,1}-valued class.
std::size_t vc_dim(const FunctionClass& fc);

/// Re-checks a certificate against the two shattering inequalities.
bool check_certificate(const FunctionClass& fc, const ShatterCertificate& cert);

}  // namespace fatshatter
