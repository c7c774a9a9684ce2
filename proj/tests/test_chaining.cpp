#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fatshatter/chaining.hpp"
#include "fatshatter/serialization.hpp"
#include "support/generators.hpp"

using namespace fatshatter;

namespace {

// A chain over the restriction of a random class to a random double sample.
struct BuiltChain {
    std::size_t m;
    double epsilon;
    SeparatedNet net;
    ChainStructure chain;
};

BuiltChain build_random_chain(Rng& rng, std::size_t max_points, std::size_t max_rows,
                              bool binary) {
    const auto fc = binary ? testing::random_binary_class(rng, max_points, max_rows)
                           : testing::random_dyadic_class(rng, max_points, max_rows);
    const std::size_t m = 1 + rng.next_below(8);
    const auto indices = testing::random_sample_indices(rng, fc.num_points(), m);
    const auto restriction = restrict_class(fc, SampleVector(indices, m));
    const double epsilon = (1.0 + static_cast<double>(rng.next_below(6))) / 8.0;
    auto net = greedy_net(restriction.vectors, epsilon / 8.0);
    auto chain = build_chain(net, fc.range_width(), epsilon);
    return {m, epsilon, std::move(net), std::move(chain)};
}

}  // namespace

TEST_CASE("chain_depth evaluates floor(log2(R/eps)) + 4") {
    CHECK(chain_depth(1.0, 0.125) == 7);
    CHECK(chain_depth(1.0, 0.9) == 4);
    CHECK(chain_depth(4.0, 1.0) == 6);

    CHECK_THROWS_AS(chain_depth(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(chain_depth(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(chain_depth(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("build_chain on a singleton net") {
    const double epsilon = 0.5;
    const auto net = greedy_net({{0.25, 0.25}}, epsilon / 8.0);
    const auto chain = build_chain(net, 1.0, epsilon);

    for (const auto& level : chain.levels) {
        CHECK(level == std::vector<std::size_t>{0});
    }
    REQUIRE(chain.increments[0].size() == 1);
    CHECK(chain.increments[0][0] == std::vector<double>{0.25, 0.25});
    for (std::size_t j = 1; j <= chain.depth; ++j) {
        REQUIRE(chain.increments[j].size() == 1);
        CHECK(chain.increments[j][0] == std::vector<double>{0.0, 0.0});
    }
    CHECK(verify_chain(chain, 1).all_pass());
}

TEST_CASE("build_chain splits a two-point net at the first fitting level") {
    const double epsilon = 0.5;
    const std::vector<std::vector<double>> points{{0.0, 0.0}, {1.0, 1.0}};
    const auto net = greedy_net(points, epsilon / 8.0);
    REQUIRE(net.points.size() == 2);

    const auto chain = build_chain(net, 1.0, epsilon);
    CHECK(chain.levels[0] == std::vector<std::size_t>{0});
    // d_2 between the points is 1, so level 1 (radius 1/2) first separates them.
    CHECK(chain.levels[1] == std::vector<std::size_t>{0, 1});
    REQUIRE(chain.increments[1].size() == 2);
    CHECK(chain.increments[1][1] == std::vector<double>{1.0, 1.0});
    CHECK(verify_chain(chain, 1).all_pass());
}

TEST_CASE("build_chain validates the net scale") {
    const auto net = greedy_net({{0.0, 0.0}}, 0.1);
    CHECK_THROWS_AS(build_chain(net, 1.0, 0.5), std::invalid_argument);
    const auto empty_eps = greedy_net({{0.0, 0.0}}, 0.125);
    CHECK_THROWS_AS(build_chain(empty_eps, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("increment_halved_norm") {
    CHECK(increment_halved_norm(std::vector<double>{1.0, 1.0, 0.0, 0.0}, 2) == 2.0);
    CHECK(increment_halved_norm(std::vector<double>{0.5, 0.75, 0.5, 0.75}, 2) == 0.0);
    CHECK(increment_halved_norm(std::vector<double>{3.0, 0.0, 1.0, 0.0}, 2) == 4.0);
    CHECK_THROWS_AS(increment_halved_norm(std::vector<double>{1.0, 2.0, 3.0}, 1),
                    std::invalid_argument);
}

TEST_CASE("built chains pass verification and their invariants") {
    Rng rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        auto built = build_random_chain(rng, 6, 16, trial % 2 == 0);
        const auto& chain = built.chain;

        CHECK(verify_chain(chain, built.m).all_pass());

        // The last level recovers the whole net: its radius sits below the
        // net's separation scale.
        const double final_radius =
            chain.range_width * std::ldexp(1.0, -static_cast<int>(chain.depth));
        CHECK(final_radius <= built.epsilon / 8.0);
        CHECK(chain.levels[chain.depth].size() == chain.net_points.size());

        // Levels are nested.
        for (std::size_t j = 1; j <= chain.depth; ++j) {
            const auto& prev = chain.levels[j - 1];
            const auto& cur = chain.levels[j];
            REQUIRE(cur.size() >= prev.size());
            CHECK(std::equal(prev.begin(), prev.end(), cur.begin()));
        }

        // Each increment obeys the projection-distance relation.
        for (std::size_t j = 1; j <= chain.depth; ++j) {
            for (std::size_t idx : chain.levels[j]) {
                const auto& from = chain.net_points[idx];
                const auto& to =
                    chain.net_points[chain.levels[j - 1][chain.projections[j - 1][idx]]];
                std::vector<double> h(from.size());
                for (std::size_t i = 0; i < from.size(); ++i) h[i] = from[i] - to[i];
                const double d = distance(from, to, 2);
                CHECK(increment_halved_norm(h, built.m) <=
                      4.0 * static_cast<double>(built.m) * d * d + 1e-12);
            }
        }

        // |H_j| never beats the exact packing number of the net at that scale.
        if (chain.net_points.size() <= 24) {
            for (std::size_t j = 0; j <= chain.depth; ++j) {
                const double radius =
                    chain.range_width * std::ldexp(1.0, -static_cast<int>(j));
                CHECK(chain.increments[j].size() <=
                      packing_number_exact(chain.net_points, radius));
            }
        }
    }
}

TEST_CASE("build_chain is deterministic") {
    Rng rng(71);
    const auto fc = testing::random_binary_class(rng, 6, 16);
    const std::size_t m = 4;
    const auto indices = testing::random_sample_indices(rng, fc.num_points(), m);
    const auto restriction = restrict_class(fc, SampleVector(indices, m));
    const auto net = greedy_net(restriction.vectors, 0.25 / 8.0);

    const auto first = build_chain(net, 1.0, 0.25);
    const auto second = build_chain(net, 1.0, 0.25);
    CHECK(first.levels == second.levels);
    CHECK(first.projections == second.projections);
    CHECK(first.increments == second.increments);
    CHECK(first.decomposition == second.decomposition);
}

TEST_CASE("corrupted chains are reported with witnesses") {
    Rng rng(73);
    auto built = build_random_chain(rng, 6, 16, true);
    // Make sure the instance has something to corrupt.
    for (int attempt = 0; attempt < 10 && built.net.points.size() < 2; ++attempt) {
        built = build_random_chain(rng, 6, 16, true);
    }
    REQUIRE(built.net.points.size() >= 2);

    SUBCASE("doubling a nonzero increment") {
        auto mutated = built.chain;
        bool corrupted = false;
        for (auto& level : mutated.increments) {
            for (auto& h : level) {
                bool nonzero = false;
                for (double v : h) nonzero = nonzero || v != 0.0;
                if (nonzero) {
                    for (auto& v : h) v *= 2.0;
                    corrupted = true;
                    break;
                }
            }
            if (corrupted) break;
        }
        REQUIRE(corrupted);
        const auto report = verify_chain(mutated, built.m);
        CHECK_FALSE(report.all_pass());
        CHECK_FALSE((report.decomposition_ok && report.increment_bounds_ok));
        CHECK(!report.witnesses.empty());
    }

    SUBCASE("tampering with a decomposition summand") {
        auto mutated = built.chain;
        mutated.decomposition[0][0][0] += 0.5;
        const auto report = verify_chain(mutated, built.m);
        CHECK_FALSE(report.decomposition_ok);
        CHECK(!report.witnesses.empty());
    }

    SUBCASE("packing a level with a too-close member") {
        auto mutated = built.chain;
        if (mutated.net_points.size() >= 2) {
            auto& top = mutated.levels[0];
            top.push_back(top[0] == 0 && mutated.net_points.size() > 1 ? 1 : 0);
            const auto report = verify_chain(mutated, built.m);
            CHECK_FALSE(report.level_sizes_ok);
            CHECK(!report.witnesses.empty());
        }
    }
}

TEST_CASE("chain JSON dump carries the full structure") {
    const auto net = greedy_net({{0.0, 0.0}, {1.0, 1.0}}, 0.5 / 8.0);
    const auto chain = build_chain(net, 1.0, 0.5);
    const auto j = to_json(chain);
    CHECK(j.at("depth").get<std::size_t>() == chain.depth);
    CHECK(j.at("levels").size() == chain.depth + 1);
    CHECK(j.at("net_points").size() == 2);
}
