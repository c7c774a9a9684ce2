#include "fatshatter/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fatshatter/chaining.hpp"
#include "fatshatter/dimensions.hpp"
#include "fatshatter/empirical_process.hpp"
#include "fatshatter/errors.hpp"
#include "fatshatter/numeric.hpp"
#include "fatshatter/rng.hpp"

namespace fatshatter {

namespace {

constexpr std::uint64_t kChainSampleTag = 0x636861696eULL;

void check_bound_args(double range_width, double epsilon, double delta) {
    if (!(range_width > 0.0)) {
        throw std::invalid_argument("sample bound: range_width must be positive");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("sample bound: epsilon must be positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("sample bound: delta must lie in (0, 1)");
    }
}

}  // namespace

std::size_t theorem_sample_bound(double range_width, double epsilon, double delta,
                                 std::size_t kappa, const BoundConstants& constants) {
    check_bound_args(range_width, epsilon, delta);
    if (!(constants.c_tilde > 0.0) || !(constants.C_tilde > 0.0)) {
        throw std::invalid_argument("theorem_sample_bound: constants must be positive");
    }
    const double ln2 = std::log(2.0);
    const double ratio_sq = (range_width / epsilon) * (range_width / epsilon);
    const double kap = static_cast<double>(kappa);

    const double sym_term = 4.0 * ln2 * ratio_sq;
    const double series_term = 88.0 * 88.0 * ln2 * ratio_sq * (constants.C_tilde * kap + 1.0);
    const double closing_term =
        2.0 * 44.0 * 44.0 * ratio_sq *
        (constants.C_tilde * kap * std::log(8.0 * std::max(4.0 / constants.c_tilde, 1.0)) +
         std::log(1.0 / delta));

    return std::max({least_int_geq(sym_term), least_int_geq(series_term),
                     least_int_geq(closing_term)});
}

std::size_t legacy_sample_bound(double range_width, double epsilon, double delta,
                                std::size_t fat_at_eps_over_5, double scale_constant) {
    check_bound_args(range_width, epsilon, delta);
    if (!(scale_constant > 0.0)) {
        throw std::invalid_argument("legacy_sample_bound: scale_constant must be positive");
    }
    const double ratio_sq = (range_width / epsilon) * (range_width / epsilon);
    const double log_term = std::log(range_width / epsilon);
    const double value =
        scale_constant * ratio_sq *
        (static_cast<double>(fat_at_eps_over_5) * log_term * log_term + std::log(1.0 / delta));
    return least_int_geq(value);
}

void ExperimentConfig::validate() const {
    if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("config: delta must lie in (0, 1)");
    if (trials < 1) throw ConfigError("config: trials must be >= 1");
    for (std::size_t m : m_values) {
        if (m == 0) throw ConfigError("config: m values must be positive");
    }
    if (statistic != "deviation" && statistic != "symmetrized") {
        throw ConfigError("config: unknown statistic '" + statistic + "'");
    }
    if (distribution.size() != function_class.num_points()) {
        throw ConfigError("config: distribution length does not match the class domain");
    }
    if (!(legacy_scale > 0.0)) throw ConfigError("config: legacy_scale must be positive");
    if (sample_m == 0) throw ConfigError("config: m must be positive");
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    const auto& fc = config.function_class;
    const double range = fc.range_width();
    const double eps = config.epsilon;

    const std::size_t kappa = fat_dim(fc, config.constants.c_tilde * eps / 16.0);
    const std::size_t legacy_fat = fat_dim(fc, eps / 5.0);
    const std::size_t theorem_m =
        theorem_sample_bound(range, eps, config.delta, kappa, config.constants);
    const std::size_t legacy_m =
        legacy_sample_bound(range, eps, config.delta, legacy_fat, config.legacy_scale);

    std::vector<ExperimentRow> rows;
    rows.reserve(config.m_values.size());
    for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
        const std::size_t m = config.m_values[mi];
        ExperimentRow row;
        row.class_id = config.class_id;
        row.m = m;
        row.epsilon = eps;
        row.seed = config.seed;
        row.delta = config.delta;
        row.kappa = kappa;
        row.legacy_fat = legacy_fat;
        row.theorem_m = theorem_m;
        row.legacy_m = legacy_m;

        TailEstimate estimate;
        if (config.statistic == "symmetrized") {
            estimate = config.exact
                           ? symmetrized_tail_exact(fc, config.distribution, m, eps)
                           : symmetrized_deviation_tail(fc, config.distribution, m, eps,
                                                        config.trials, config.seed, threads);
        } else {
            estimate = config.exact
                           ? tail_probability_exact(fc, config.distribution, m, eps)
                           : tail_probability_mc(fc, config.distribution, m, eps, config.trials,
                                                 config.seed, threads);
        }
        row.trials = estimate.trials;
        row.estimate = estimate.point_estimate;
        row.half_width = estimate.half_width_95;
        row.mode = estimate.exact ? "exact" : "mc";

        // Chain statistics over one seeded double sample of size 2m.
        Rng rng = Rng::stream(derive_seed(config.seed, kChainSampleTag), mi);
        std::vector<std::size_t> indices(2 * m);
        for (auto& idx : indices) idx = config.distribution.sample(rng);
        const auto restriction = restrict_class(fc, SampleVector(indices, m));
        const auto net = greedy_net(restriction.vectors, eps / 8.0);
        row.net_size = net.points.size();
        if (eps < range) {
            const auto chain = build_chain(net, range, eps);
            row.chain_depth = chain.depth;
            row.chain_ok = verify_chain(chain, m).all_pass();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool full) {
    std::ostringstream out;
    out << "class_id,m,epsilon,trials,estimate,half_width,seed,mode";
    if (full) out << ",delta,kappa,legacy_fat,theorem_m,legacy_m,net_size,chain_depth,chain_ok";
    out << "\n";
    for (const auto& row : rows) {
        out << '"' << row.class_id << '"' << ',' << row.m << ',' << format_double(row.epsilon)
            << ',' << row.trials << ',' << format_double(row.estimate) << ','
            << format_double(row.half_width) << ',' << row.seed << ',' << row.mode;
        if (full) {
            out << ',' << format_double(row.delta) << ',' << row.kappa << ',' << row.legacy_fat
                << ',' << row.theorem_m << ',' << row.legacy_m << ',' << row.net_size << ',';
            if (row.chain_depth) out << *row.chain_depth;
            out << ',';
            if (row.chain_ok) out << csv_bool(*row.chain_ok);
        }
        out << "\n";
    }
    return out.str();
}

std::vector<CompareRow> compare_bounds(double range_width, const std::vector<double>& epsilons,
                                       double delta, std::size_t fat,
                                       const BoundConstants& constants, double legacy_scale) {
    std::vector<CompareRow> rows;
    rows.reserve(epsilons.size());
    for (double eps : epsilons) {
        CompareRow row;
        row.epsilon = eps;
        row.theorem_m = theorem_sample_bound(range_width, eps, delta, fat, constants);
        row.legacy_m = legacy_sample_bound(range_width, eps, delta, fat, legacy_scale);
        row.ratio = static_cast<double>(row.legacy_m) / static_cast<double>(row.theorem_m);
        rows.push_back(row);
    }
    return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "epsilon,theorem_m,legacy_m,ratio\n";
    for (const auto& row : rows) {
        out << format_double(row.epsilon) << ',' << row.theorem_m << ',' << row.legacy_m << ','
            << format_double(row.ratio) << "\n";
    }
    return out.str();
}

}  // namespace fatshatter
