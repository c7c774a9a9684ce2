#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fatshatter/rng.hpp"

namespace fatshatter {

/// A finite class of real-valued functions over a finite domain.
///
/// Rows are functions, columns are domain points, and every value lies in the
/// declared range [range_lo, range_hi]. Rows must be pairwise distinct (the
/// class is a set of functions). Instances are immutable after construction.
class FunctionClass {
public:
    FunctionClass(std::vector<std::vector<double>> rows, double range_lo, double range_hi,
                  std::optional<std::vector<double>> domain_labels = std::nullopt);

    std::size_t num_functions() const { return rows_.size(); }
    std::size_t num_points() const { return rows_.front().size(); }
    double value(std::size_t f, std::size_t x) const { return rows_[f][x]; }
    const std::vector<double>& function(std::size_t f) const { return rows_[f]; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    double range_lo() const { return range_lo_; }
    double range_hi() const { return range_hi_; }
    double range_width() const { return range_hi_ - range_lo_; }
    const std::optional<std::vector<double>>& domain_labels() const { return domain_labels_; }

    /// True when every value is exactly 0 or 1.
    bool is_binary() const;

private:
    std::vector<std::vector<double>> rows_;
    double range_lo_;
    double range_hi_;
    std::optional<std::vector<double>> domain_labels_;  // inert metadata
};

/// A categorical distribution over the domain columns of a class.
class Distribution {
public:
    explicit Distribution(std::vector<double> weights);
    static Distribution uniform(std::size_t n);

    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    /// Inverse-CDF draw of one column index.
    std::size_t sample(Rng& rng) const;

private:
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

/// A double sample of 2m domain-column indices.
struct SampleVector {
    std::vector<std::size_t> indices;
    std::size_t m;

    SampleVector(std::vector<std::size_t> indices, std::size_t m);
};

/// The distinct restriction vectors of a class on a fixed sample, in
/// first-occurrence order, each with one originating row index.
struct EmpiricalRestriction {
    std::vector<std::vector<double>> vectors;
    std::vector<std::size_t> provenance;
    std::size_t m = 0;
};

/// Evaluates every function on the sample and collapses duplicate vectors.
EmpiricalRestriction restrict_class(const FunctionClass& fc, const SampleVector& sample);

/// Threshold indicators x -> 1[x >= t] on a fixed grid, duplicates removed.
FunctionClass make_threshold_class(const std::vector<double>& grid,
                                   const std::vector<double>& thresholds);

/// All 2^n {0,1}-valued functions on n points. Guarded at n <= 16.
FunctionClass make_full_binary_class(std::size_t n);

/// Expectation of one row under a distribution on the domain.
double exact_mean(const FunctionClass& fc, std::size_t row, const Distribution& dist);

}  // namespace fatshatter
