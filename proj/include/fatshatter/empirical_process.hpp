#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fatshatter/class_core.hpp"

namespace fatshatter {

/// How sign-vector probabilities are evaluated: full enumeration of the 2^m
/// sign assignments (m <= 20) or seeded sampling.
struct RademacherLaw {
    bool exact_mode = true;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    static RademacherLaw exact() { return {true, 0, 0}; }
    static RademacherLaw sampled(std::size_t trials, std::uint64_t seed) {
        return {false, trials, seed};
    }
};

/// A probability estimate. Exact estimates enumerate every outcome and carry
/// zero confidence width; sampled ones report a normal-approximation 95%
/// half-width.
struct TailEstimate {
    double point_estimate = 0.0;
    std::size_t trials = 0;
    double half_width_95 = 0.0;
    std::uint64_t seed = 0;
    bool exact = false;
};

/// Max over rows of |empirical mean - expectation| on m seeded iid draws.
double sup_deviation(const FunctionClass& fc, const Distribution& dist, std::size_t m,
                     std::uint64_t seed);

/// Monte Carlo estimate of P(sup_deviation > epsilon); trial k draws from the
/// stream keyed by (seed, k).
TailEstimate tail_probability_mc(const FunctionClass& fc, const Distribution& dist,
                                 std::size_t m, double epsilon, std::size_t trials,
                                 std::uint64_t seed, unsigned threads = 1);

/// Exact deviation tail by enumerating all |X|^m samples with their weights.
TailEstimate tail_probability_exact(const FunctionClass& fc, const Distribution& dist,
                                    std::size_t m, double epsilon);

/// P(sup over vectors of |1/m sum_i xi_i (f(i) - f(m+i))| > threshold) for
/// Rademacher signs xi, by full enumeration or sampling per `law`.
TailEstimate rademacher_sup_tail(const std::vector<std::vector<double>>& vectors, std::size_t m,
                                 double threshold, const RademacherLaw& law,
                                 unsigned threads = 1);

/// Hoeffding tail bound 2 exp(-eps^2 m^2 / (2 sum_i (h(i)-h(m+i))^2)) for one
/// increment vector; 0 when every halved increment vanishes (the true tail).
double hoeffding_tail(std::span<const double> h, std::size_t m, double eps_j);

/// Sum over levels and their vectors of hoeffding_tail at the level's scale.
/// When `epsilon` is supplied, validates sum(schedule) <= epsilon/4.
double multiscale_bound(const std::vector<std::vector<std::vector<double>>>& levels,
                        std::size_t m, const std::vector<double>& schedule,
                        std::optional<double> epsilon = std::nullopt);

/// Level weights c_j = (1/44) sqrt(4^(2-j) (j+1)), j = 0..l.
std::vector<double> weight_schedule(std::size_t l);

/// Partial sum of the level weights through index l.
double weight_schedule_sum(std::size_t l);

/// Smallest m with m >= 4 ln(2) (range_width/epsilon)^2.
std::size_t symmetrization_threshold(double range_width, double epsilon);

/// Monte Carlo estimate of the double-sample deviation tail at epsilon/2.
TailEstimate symmetrized_deviation_tail(const FunctionClass& fc, const Distribution& dist,
                                        std::size_t m, double epsilon, std::size_t trials,
                                        std::uint64_t seed, unsigned threads = 1);

/// Exact double-sample tail at epsilon/2 by enumerating all |X|^(2m) samples.
TailEstimate symmetrized_tail_exact(const FunctionClass& fc, const Distribution& dist,
                                    std::size_t m, double epsilon);

/// Max over all double samples x in X^(2m) of the exact sign-enumeration tail
/// of the restriction of the class to x.
double sup_rademacher_tail_over_samples(const FunctionClass& fc, std::size_t m,
                                        double threshold);

}  // namespace fatshatter
