#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatshatter/class_core.hpp"
#include "fatshatter/metric_geometry.hpp"

namespace fatshatter {

/// Smallest m simultaneously satisfying the three sample-size conditions of
/// the convergence bound: the symmetrization threshold, the geometric-series
/// condition 88^2 ln(2) (R/eps)^2 (C_tilde*kappa + 1), and the closing
/// condition 2*44^2 (R/eps)^2 (C_tilde*kappa*ln(8 max{4/c_tilde, 1}) +
/// ln(1/delta)). `kappa` is the fat-shattering value at scale
/// c_tilde*epsilon/16, supplied by the caller.
std::size_t theorem_sample_bound(double range_width, double epsilon, double delta,
                                 std::size_t kappa, const BoundConstants& constants);

/// Smallest m >= scale * (R/eps)^2 (fat * ln^2(R/eps) + ln(1/delta)), the
/// prior art's squared-log form. `scale_constant` stands in for the
/// unspecified constant factor; the default 1 is non-rigorous.
std::size_t legacy_sample_bound(double range_width, double epsilon, double delta,
                                std::size_t fat_at_eps_over_5, double scale_constant = 1.0);

/// A fully resolved experiment description.
struct ExperimentConfig {
    std::string class_id;
    FunctionClass function_class;
    Distribution distribution;
    double epsilon = 0.25;
    double delta = 0.05;
    std::vector<std::size_t> m_values;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    BoundConstants constants;
    double legacy_scale = 1.0;
    std::string statistic = "deviation";  // or "symmetrized"
    bool exact = false;

    // Subcommand-specific extras.
    std::vector<double> gamma_values;
    std::size_t sample_m = 2;
    std::optional<double> zeta;
    std::vector<double> epsilon_sweep;
    std::size_t sweep_fat = 0;

    ExperimentConfig(std::string id, FunctionClass fc, Distribution dist)
        : class_id(std::move(id)),
          function_class(std::move(fc)),
          distribution(std::move(dist)) {}

    /// Enforces the config invariants; throws ConfigError.
    void validate() const;
};

struct ExperimentRow {
    std::string class_id;
    std::size_t m = 0;
    double epsilon = 0.0;
    std::size_t trials = 0;
    double estimate = 0.0;
    double half_width = 0.0;
    std::uint64_t seed = 0;
    std::string mode;
    double delta = 0.0;
    std::size_t kappa = 0;
    std::size_t legacy_fat = 0;
    std::size_t theorem_m = 0;
    std::size_t legacy_m = 0;
    std::size_t net_size = 0;
    std::optional<std::size_t> chain_depth;
    std::optional<bool> chain_ok;
};

/// One row per configured m: tail estimate, bound evaluations, and the chain
/// statistics of one seeded double sample.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, unsigned threads = 1);

/// Renders rows as CSV. The basic schema is
///   class_id,m,epsilon,trials,estimate,half_width,seed,mode
/// and `full` appends
///   delta,kappa,legacy_fat,theorem_m,legacy_m,net_size,chain_depth,chain_ok.
std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool full);

struct CompareRow {
    double epsilon = 0.0;
    std::size_t theorem_m = 0;
    std::size_t legacy_m = 0;
    double ratio = 0.0;  // legacy / theorem
};

/// Evaluates both bounds across an epsilon sweep at a fixed fat value.
std::vector<CompareRow> compare_bounds(double range_width, const std::vector<double>& epsilons,
                                       double delta, std::size_t fat,
                                       const BoundConstants& constants, double legacy_scale);

std::string compare_csv(const std::vector<CompareRow>& rows);

}  // namespace fatshatter
