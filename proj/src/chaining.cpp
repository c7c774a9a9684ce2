#include "fatshatter/chaining.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace fatshatter {

std::size_t chain_depth(double range_width, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < range_width)) {
        throw std::invalid_argument("chain_depth: need 0 < epsilon < range_width");
    }
    const double ratio = range_width / epsilon;
    int k = static_cast<int>(std::floor(std::log2(ratio)));
    // Settle the floor exactly against powers of two.
    while (std::ldexp(1.0, k + 1) <= ratio) ++k;
    while (std::ldexp(1.0, k) > ratio) --k;
    return static_cast<std::size_t>(k + 4);
}

namespace {

std::vector<double> subtract(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace

ChainStructure build_chain(const SeparatedNet& net, double range_width, double epsilon) {
    if (net.points.empty()) {
        throw std::invalid_argument("build_chain: empty net");
    }
    if (!(epsilon > 0.0 && epsilon < range_width)) {
        throw std::invalid_argument("build_chain: need 0 < epsilon < range_width");
    }
    if (std::fabs(net.epsilon - epsilon / 8.0) > 1e-12 * epsilon) {
        throw std::invalid_argument("build_chain: net scale does not equal epsilon/8");
    }

    ChainStructure chain;
    chain.depth = chain_depth(range_width, epsilon);
    chain.epsilon = epsilon;
    chain.range_width = range_width;
    chain.net_points = net.points;

    const std::size_t n = net.points.size();
    const std::size_t l = chain.depth;

    chain.levels.resize(l + 1);
    chain.levels[0] = {0};
    for (std::size_t j = 1; j <= l; ++j) {
        const double radius = range_width * std::ldexp(1.0, -static_cast<int>(j));
        auto& level = chain.levels[j];
        level = chain.levels[j - 1];
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(level.begin(), level.end(), i) != level.end()) continue;
            bool separated = true;
            for (std::size_t member : level) {
                if (distance(net.points[i], net.points[member], 2) <= radius) {
                    separated = false;
                    break;
                }
            }
            if (separated) level.push_back(i);
        }
    }

    chain.projections.resize(l + 1);
    for (std::size_t j = 0; j <= l; ++j) {
        const double radius = range_width * std::ldexp(1.0, -static_cast<int>(j));
        auto& proj = chain.projections[j];
        proj.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t pos = chain.levels[j].size();
            for (std::size_t k = 0; k < chain.levels[j].size(); ++k) {
                if (distance(net.points[i], net.points[chain.levels[j][k]], 2) <= radius) {
                    pos = k;
                    break;
                }
            }
            if (pos == chain.levels[j].size()) {
                // The maximal extension guarantees a member within radius.
                throw std::logic_error("build_chain: level " + std::to_string(j) +
                                       " fails to cover a net point");
            }
            proj[i] = pos;
        }
    }

    chain.increments.resize(l + 1);
    chain.increments[0].push_back(net.points[chain.levels[0][0]]);
    for (std::size_t j = 1; j <= l; ++j) {
        std::map<std::vector<double>, bool> seen;
        for (std::size_t g : chain.levels[j]) {
            const std::size_t prev = chain.levels[j - 1][chain.projections[j - 1][g]];
            auto h = subtract(net.points[g], net.points[prev]);
            if (seen.emplace(h, true).second) {
                chain.increments[j].push_back(std::move(h));
            }
        }
    }

    // Telescoping decomposition: walk each net point down the projection
    // chain; the level-j summand is the step taken at level j.
    chain.decomposition.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> path(l + 1);
        path[l] = i;
        for (std::size_t j = l; j > 0; --j) {
            path[j - 1] = chain.levels[j - 1][chain.projections[j - 1][path[j]]];
        }
        auto& summands = chain.decomposition[i];
        summands.resize(l + 1);
        summands[0] = net.points[path[0]];
        for (std::size_t j = 1; j <= l; ++j) {
            summands[j] = subtract(net.points[path[j]], net.points[path[j - 1]]);
        }
    }
    return chain;
}

double increment_halved_norm(std::span<const double> h, std::size_t m) {
    if (h.size() % 2 != 0 || h.size() != 2 * m) {
        throw std::invalid_argument("increment_halved_norm: expected a vector of length 2m");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = h[i] - h[m + i];
        acc += d * d;
    }
    return acc;
}

ChainVerification verify_chain(const ChainStructure& chain, std::size_t m) {
    for (const auto& point : chain.net_points) {
        if (point.size() != 2 * m) {
            throw std::invalid_argument("verify_chain: net vectors are not of length 2m");
        }
    }
    ChainVerification report;
    const std::size_t l = chain.depth;
    const double range = chain.range_width;

    report.decomposition_ok = true;
    for (std::size_t i = 0; i < chain.net_points.size(); ++i) {
        const auto& summands = chain.decomposition[i];
        if (summands.size() != l + 1) {
            report.decomposition_ok = false;
            report.witnesses.push_back("net point " + std::to_string(i) +
                                       ": wrong number of summands");
            continue;
        }
        for (std::size_t j = 0; j <= l; ++j) {
            const auto& bucket = chain.increments[j];
            if (std::find(bucket.begin(), bucket.end(), summands[j]) == bucket.end()) {
                report.decomposition_ok = false;
                report.witnesses.push_back("net point " + std::to_string(i) + ": summand " +
                                           std::to_string(j) + " not a member of H_" +
                                           std::to_string(j));
            }
        }
        for (std::size_t coord = 0; coord < 2 * m; ++coord) {
            double acc = 0.0;
            for (const auto& s : summands) acc += s[coord];
            if (std::fabs(acc - chain.net_points[i][coord]) > 1e-9) {
                report.decomposition_ok = false;
                report.witnesses.push_back("net point " + std::to_string(i) +
                                           ": summands miss coordinate " +
                                           std::to_string(coord));
                break;
            }
        }
    }

    report.increment_bounds_ok = true;
    for (std::size_t j = 0; j <= l; ++j) {
        const double cap = j == 0
                               ? static_cast<double>(m) * range * range
                               : 16.0 * static_cast<double>(m) * range * range *
                                     std::ldexp(1.0, -2 * static_cast<int>(j));
        for (std::size_t k = 0; k < chain.increments[j].size(); ++k) {
            if (increment_halved_norm(chain.increments[j][k], m) > cap) {
                report.increment_bounds_ok = false;
                report.witnesses.push_back("H_" + std::to_string(j) + "[" + std::to_string(k) +
                                           "] exceeds the level-" + std::to_string(j) +
                                           " increment cap");
            }
        }
    }

    report.level_sizes_ok = true;
    for (std::size_t j = 0; j <= l; ++j) {
        if (chain.increments[j].size() > chain.levels[j].size()) {
            report.level_sizes_ok = false;
            report.witnesses.push_back("|H_" + std::to_string(j) + "| exceeds |G_" +
                                       std::to_string(j) + "|");
        }
        const double radius = range * std::ldexp(1.0, -static_cast<int>(j));
        const auto& level = chain.levels[j];
        for (std::size_t a = 0; a < level.size(); ++a) {
            for (std::size_t b = a + 1; b < level.size(); ++b) {
                if (distance(chain.net_points[level[a]], chain.net_points[level[b]], 2) <=
                    radius) {
                    report.level_sizes_ok = false;
                    report.witnesses.push_back("G_" + std::to_string(j) +
                                               " separation fails between members " +
                                               std::to_string(a) + " and " + std::to_string(b));
                }
            }
        }
    }
    return report;
}

}  // namespace fatshatter
