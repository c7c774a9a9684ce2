#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fatshatter {

/// Normalized l_p distance ((1/m) sum |g_i - h_i|^p)^(1/p), m = length, p in {1,2}.
double distance(std::span<const double> g, std::span<const double> h, int p);

/// An epsilon-separated epsilon-net over an ambient point set, produced by a
/// greedy scan in input order. `points` keeps selection order; `cover_map[i]`
/// is the index of the first net point within epsilon of ambient point i.
struct SeparatedNet {
    std::vector<std::vector<double>> points;
    double epsilon = 0.0;
    std::vector<std::size_t> cover_map;
};

SeparatedNet greedy_net(const std::vector<std::vector<double>>& points, double epsilon);

/// Exact packing number: maximum clique on the graph whose edges join points
/// at d_2 distance strictly greater than zeta. Capped (default 24 points).
std::size_t packing_number_exact(const std::vector<std::vector<double>>& points, double zeta,
                                 std::size_t cap = 24);

/// The universal constants of the packing bound. The (1, 1) default is a
/// non-rigorous unit profile; no rigorous numeric values are known here.
struct BoundConstants {
    double c_tilde = 1.0;
    double C_tilde = 1.0;

    BoundConstants() = default;
    BoundConstants(double c_tilde_, double C_tilde_);
};

/// Packing bound (range/(c_tilde*zeta))^(C_tilde*fat); the caller supplies the
/// fat-shattering value at scale c_tilde*zeta.
double rv_packing_bound(double range_width, double zeta, std::size_t fat_at_ctilde_zeta,
                        const BoundConstants& constants);

}  // namespace fatshatter
