#include "fatshatter/class_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "fatshatter/errors.hpp"

namespace fatshatter {

FunctionClass::FunctionClass(std::vector<std::vector<double>> rows, double range_lo,
                             double range_hi, std::optional<std::vector<double>> domain_labels)
    : rows_(std::move(rows)),
      range_lo_(range_lo),
      range_hi_(range_hi),
      domain_labels_(std::move(domain_labels)) {
    if (!(range_lo_ < range_hi_)) {
        throw std::invalid_argument("FunctionClass: range_lo must be < range_hi");
    }
    if (rows_.empty() || rows_.front().empty()) {
        throw std::invalid_argument("FunctionClass: need at least one row and one column");
    }
    const std::size_t cols = rows_.front().size();
    for (const auto& row : rows_) {
        if (row.size() != cols) {
            throw std::invalid_argument("FunctionClass: ragged rows");
        }
        for (double v : row) {
            if (!(v >= range_lo_ && v <= range_hi_)) {
                throw std::invalid_argument("FunctionClass: value outside declared range");
            }
        }
    }
    if (domain_labels_ && domain_labels_->size() != cols) {
        throw std::invalid_argument("FunctionClass: domain_labels length mismatch");
    }
    auto sorted = rows_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("FunctionClass: duplicate rows");
    }
}

bool FunctionClass::is_binary() const {
    for (const auto& row : rows_) {
        for (double v : row) {
            if (v != 0.0 && v != 1.0) return false;
        }
    }
    return true;
}

Distribution::Distribution(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw std::invalid_argument("Distribution: empty weight vector");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("Distribution: negative weight");
        }
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("Distribution: weights sum to " + std::to_string(total) +
                                    ", expected 1");
    }
    cumulative_.reserve(weights_.size());
    double acc = 0.0;
    for (double w : weights_) {
        acc += w;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Distribution: empty domain");
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::size_t Distribution::sample(Rng& rng) const {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(it - cumulative_.begin());
}

SampleVector::SampleVector(std::vector<std::size_t> idx, std::size_t half)
    : indices(std::move(idx)), m(half) {
    if (m == 0) throw std::invalid_argument("SampleVector: m must be positive");
    if (indices.size() != 2 * m) {
        throw std::invalid_argument("SampleVector: expected 2m indices");
    }
}

EmpiricalRestriction restrict_class(const FunctionClass& fc, const SampleVector& sample) {
    for (std::size_t idx : sample.indices) {
        if (idx >= fc.num_points()) {
            throw std::out_of_range("restrict_class: sample index " + std::to_string(idx) +
                                    " out of range");
        }
    }
    EmpiricalRestriction out;
    out.m = sample.m;
    // Dedupe by exact bitwise equality, keeping first-occurrence order.
    std::map<std::vector<double>, std::size_t> seen;
    for (std::size_t f = 0; f < fc.num_functions(); ++f) {
        std::vector<double> vec(sample.indices.size());
        for (std::size_t i = 0; i < sample.indices.size(); ++i) {
            vec[i] = fc.value(f, sample.indices[i]);
        }
        if (seen.emplace(vec, f).second) {
            out.vectors.push_back(std::move(vec));
            out.provenance.push_back(f);
        }
    }
    return out;
}

FunctionClass make_threshold_class(const std::vector<double>& grid,
                                   const std::vector<double>& thresholds) {
    if (grid.empty() || thresholds.empty()) {
        throw std::invalid_argument("make_threshold_class: empty grid or thresholds");
    }
    std::vector<std::vector<double>> rows;
    for (double t : thresholds) {
        std::vector<double> row(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            row[i] = grid[i] >= t ? 1.0 : 0.0;
        }
        if (std::find(rows.begin(), rows.end(), row) == rows.end()) {
            rows.push_back(std::move(row));
        }
    }
    return FunctionClass(std::move(rows), 0.0, 1.0);
}

FunctionClass make_full_binary_class(std::size_t n) {
    if (n == 0) throw std::invalid_argument("make_full_binary_class: n must be positive");
    if (n > 16) {
        throw SizeLimitError("make_full_binary_class: n > 16 would enumerate 2^" +
                             std::to_string(n) + " rows");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(std::size_t{1} << n);
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << n); ++pattern) {
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = (pattern >> j) & 1 ? 1.0 : 0.0;
        }
        rows.push_back(std::move(row));
    }
    return FunctionClass(std::move(rows), 0.0, 1.0);
}

double exact_mean(const FunctionClass& fc, std::size_t row, const Distribution& dist) {
    if (row >= fc.num_functions()) {
        throw std::invalid_argument("exact_mean: row out of range");
    }
    if (dist.size() != fc.num_points()) {
        throw std::invalid_argument("exact_mean: distribution/class dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t x = 0; x < fc.num_points(); ++x) {
        acc += dist.weight(x) * fc.value(row, x);
    }
    return acc;
}

}  // namespace fatshatter
