#include "fatshatter/metric_geometry.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "fatshatter/errors.hpp"

namespace fatshatter {

double distance(std::span<const double> g, std::span<const double> h, int p) {
    if (g.size() != h.size()) {
        throw std::invalid_argument("distance: length mismatch");
    }
    if (g.empty()) {
        throw std::invalid_argument("distance: empty vectors");
    }
    if (p != 1 && p != 2) {
        throw std::invalid_argument("distance: p must be 1 or 2");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double d = std::fabs(g[i] - h[i]);
        acc += p == 1 ? d : d * d;
    }
    acc /= static_cast<double>(g.size());
    return p == 1 ? acc : std::sqrt(acc);
}

SeparatedNet greedy_net(const std::vector<std::vector<double>>& points, double epsilon) {
    if (points.empty()) {
        throw std::invalid_argument("greedy_net: empty point set");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("greedy_net: epsilon must be positive");
    }
    SeparatedNet net;
    net.epsilon = epsilon;
    for (const auto& candidate : points) {
        bool separated = true;
        for (const auto& selected : net.points) {
            if (distance(candidate, selected, 2) <= epsilon) {
                separated = false;
                break;
            }
        }
        if (separated) net.points.push_back(candidate);
    }
    net.cover_map.reserve(points.size());
    for (const auto& point : points) {
        std::size_t covered = net.points.size();
        for (std::size_t j = 0; j < net.points.size(); ++j) {
            if (distance(point, net.points[j], 2) <= epsilon) {
                covered = j;
                break;
            }
        }
        if (covered == net.points.size()) {
            // Cannot happen: a rejected point witnessed a net point within epsilon.
            throw std::logic_error("greedy_net: uncovered ambient point");
        }
        net.cover_map.push_back(covered);
    }
    return net;
}

namespace {

// Plain branch-and-bound maximum clique over a bitmask adjacency; fine for
// the <= 24 vertices the exactness cap allows.
struct CliqueSearch {
    const std::vector<std::uint32_t>& adj;
    std::size_t best = 0;

    void expand(std::uint32_t candidates, std::size_t size) {
        if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
        if (candidates == 0) {
            best = std::max(best, size);
            return;
        }
        while (candidates != 0) {
            if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
            const int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            expand(adj[static_cast<std::size_t>(v)] & candidates, size + 1);
            best = std::max(best, size + 1);
        }
    }
};

}  // namespace

std::size_t packing_number_exact(const std::vector<std::vector<double>>& points, double zeta,
                                 std::size_t cap) {
    if (points.empty()) {
        throw std::invalid_argument("packing_number_exact: empty point set");
    }
    if (!(zeta > 0.0)) {
        throw std::invalid_argument("packing_number_exact: zeta must be positive");
    }
    if (points.size() > cap || cap > 32) {
        throw SizeLimitError("packing_number_exact: " + std::to_string(points.size()) +
                             " points exceeds exactness cap " + std::to_string(cap));
    }
    const std::size_t n = points.size();
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(points[i], points[j], 2) > zeta) {
                adj[i] |= std::uint32_t{1} << j;
                adj[j] |= std::uint32_t{1} << i;
            }
        }
    }
    CliqueSearch search{adj};
    const std::uint32_t all =
        n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    search.expand(all, 0);
    return search.best;
}

BoundConstants::BoundConstants(double c_tilde_, double C_tilde_)
    : c_tilde(c_tilde_), C_tilde(C_tilde_) {
    if (!(c_tilde > 0.0) || !(C_tilde > 0.0)) {
        throw std::invalid_argument("BoundConstants: constants must be strictly positive");
    }
}

double rv_packing_bound(double range_width, double zeta, std::size_t fat_at_ctilde_zeta,
                        const BoundConstants& constants) {
    if (!(zeta > 0.0 && zeta < range_width / 2.0)) {
        throw std::invalid_argument("rv_packing_bound: need 0 < zeta < range_width/2");
    }
    const double base = range_width / (constants.c_tilde * zeta);
    const double exponent = constants.C_tilde * static_cast<double>(fat_at_ctilde_zeta);
    return std::pow(base, exponent);
}

}  // namespace fatshatter
