#include "fatshatter/dimensions.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "fatshatter/errors.hpp"

namespace fatshatter {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Backtracking search for a dichotomy->row assignment whose per-point margin
// min_in(x) - max_out(x) never drops below `gap`. Candidate rows per dichotomy
// are pre-filtered by a static margin test against the column extremes: a row
// that cannot clear the gap against the best conceivable opposition can never
// appear in a valid assignment, and a dichotomy with no candidates sinks the
// whole subset before any backtracking happens.
class MarginSearch {
public:
    MarginSearch(const FunctionClass& fc, const std::vector<std::size_t>& subset, double gap)
        : fc_(fc), subset_(subset), size_(subset.size()), gap_(gap) {}

    // Empty result means not shattered.
    std::vector<std::size_t> run() {
        const std::size_t masks = std::size_t{1} << size_;
        if (!build_candidates(masks)) return {};

        std::vector<double> min_in(size_, kInf);
        std::vector<double> max_out(size_, -kInf);
        std::vector<double> undo_in(masks * size_);
        std::vector<double> undo_out(masks * size_);
        std::vector<std::size_t> choice(masks, 0);
        std::vector<std::size_t> assignment(masks, 0);

        std::size_t mask = 0;
        while (mask < masks) {
            bool advanced = false;
            auto& pick = choice[mask];
            const auto& pool = candidates_[mask];
            while (pick < pool.size()) {
                const std::size_t row = pool[pick];
                for (std::size_t k = 0; k < size_; ++k) {
                    undo_in[mask * size_ + k] = min_in[k];
                    undo_out[mask * size_ + k] = max_out[k];
                    const double v = fc_.value(row, subset_[k]);
                    if ((mask >> k) & 1) {
                        min_in[k] = std::min(min_in[k], v);
                    } else {
                        max_out[k] = std::max(max_out[k], v);
                    }
                }
                bool feasible = true;
                for (std::size_t k = 0; k < size_; ++k) {
                    if (min_in[k] - max_out[k] < gap_) {
                        feasible = false;
                        break;
                    }
                }
                if (feasible) {
                    assignment[mask] = row;
                    ++mask;
                    if (mask < masks) choice[mask] = 0;
                    advanced = true;
                    break;
                }
                restore(undo_in, undo_out, mask, min_in, max_out);
                ++pick;
            }
            if (advanced) continue;
            if (mask == 0) return {};
            --mask;
            restore(undo_in, undo_out, mask, min_in, max_out);
            ++choice[mask];
        }

        final_min_in_ = std::move(min_in);
        final_max_out_ = std::move(max_out);
        return assignment;
    }

    const std::vector<double>& final_min_in() const { return final_min_in_; }
    const std::vector<double>& final_max_out() const { return final_max_out_; }

private:
    void restore(const std::vector<double>& undo_in, const std::vector<double>& undo_out,
                 std::size_t mask, std::vector<double>& min_in,
                 std::vector<double>& max_out) const {
        for (std::size_t k = 0; k < size_; ++k) {
            min_in[k] = undo_in[mask * size_ + k];
            max_out[k] = undo_out[mask * size_ + k];
        }
    }

    bool build_candidates(std::size_t masks) {
        std::vector<double> col_min(size_, kInf);
        std::vector<double> col_max(size_, -kInf);
        for (std::size_t k = 0; k < size_; ++k) {
            for (std::size_t row = 0; row < fc_.num_functions(); ++row) {
                const double v = fc_.value(row, subset_[k]);
                col_min[k] = std::min(col_min[k], v);
                col_max[k] = std::max(col_max[k], v);
            }
        }
        candidates_.assign(masks, {});
        const std::size_t full = masks - 1;
        for (std::size_t row = 0; row < fc_.num_functions(); ++row) {
            std::size_t in_mask = 0, out_mask = 0;
            for (std::size_t k = 0; k < size_; ++k) {
                const double v = fc_.value(row, subset_[k]);
                if (v >= col_min[k] + gap_) in_mask |= std::size_t{1} << k;
                if (v <= col_max[k] - gap_) out_mask |= std::size_t{1} << k;
            }
            const std::size_t base = full & ~out_mask;  // points the row must carry
            if ((base & in_mask) != base) continue;
            const std::size_t free = in_mask & out_mask;
            // Walk the interval [base, base | free] of serviceable dichotomies.
            std::size_t t = free;
            for (;;) {
                candidates_[base | t].push_back(row);
                if (t == 0) break;
                t = (t - 1) & free;
            }
        }
        for (std::size_t mask = 0; mask < masks; ++mask) {
            if (candidates_[mask].empty()) return false;
        }
        return true;
    }

    const FunctionClass& fc_;
    const std::vector<std::size_t>& subset_;
    std::size_t size_;
    double gap_;
    std::vector<std::vector<std::size_t>> candidates_;
    std::vector<double> final_min_in_;
    std::vector<double> final_max_out_;
};

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    return comb;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Points whose column spread cannot host the margin are never shatterable.
std::vector<std::size_t> usable_points(const FunctionClass& fc, double gap) {
    std::vector<std::size_t> usable;
    for (std::size_t x = 0; x < fc.num_points(); ++x) {
        double lo = kInf, hi = -kInf;
        for (std::size_t row = 0; row < fc.num_functions(); ++row) {
            lo = std::min(lo, fc.value(row, x));
            hi = std::max(hi, fc.value(row, x));
        }
        if (hi - lo >= gap) usable.push_back(x);
    }
    return usable;
}

std::size_t floor_log2(std::size_t n) {
    std::size_t log = 0;
    while ((std::size_t{1} << (log + 1)) <= n) ++log;
    return log;
}

}  // namespace

std::optional<ShatterCertificate> is_shattered(const FunctionClass& fc,
                                               const std::vector<std::size_t>& subset,
                                               double gamma, const ShatterOptions& opts) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("is_shattered: gamma must be positive");
    }
    if (subset.empty()) {
        throw std::invalid_argument("is_shattered: empty subset");
    }
    std::set<std::size_t> distinct(subset.begin(), subset.end());
    if (distinct.size() != subset.size()) {
        throw std::invalid_argument("is_shattered: subset indices must be distinct");
    }
    for (std::size_t idx : subset) {
        if (idx >= fc.num_points()) {
            throw std::invalid_argument("is_shattered: subset index out of range");
        }
    }
    if (subset.size() > opts.max_subset_size) {
        throw SizeLimitError("is_shattered: |S| = " + std::to_string(subset.size()) +
                             " exceeds cap " + std::to_string(opts.max_subset_size));
    }
    // Each dichotomy needs its own row, so 2^|S| > |F| settles it.
    if (subset.size() >= 64 || (std::size_t{1} << subset.size()) > fc.num_functions()) {
        return std::nullopt;
    }

    MarginSearch search(fc, subset, 2.0 * gamma - opts.slack);
    auto assignment = search.run();
    if (assignment.empty()) return std::nullopt;

    ShatterCertificate cert;
    cert.subset = subset;
    cert.gamma = gamma;
    cert.assignment = std::move(assignment);
    cert.witness.resize(subset.size());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        cert.witness[k] = (search.final_min_in()[k] + search.final_max_out()[k]) / 2.0;
    }
    return cert;
}

std::size_t fat_dim(const FunctionClass& fc, double gamma, const ShatterOptions& opts) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("fat_dim: gamma must be positive");
    }
    const auto points = usable_points(fc, 2.0 * gamma - opts.slack);
    const std::size_t max_size =
        std::min({points.size(), floor_log2(fc.num_functions()), opts.max_subset_size});

    std::size_t best = 0;
    std::vector<std::size_t> subset;
    for (std::size_t size = 1; size <= max_size; ++size) {
        bool found = false;
        auto comb = first_combination(size);
        do {
            subset.resize(size);
            for (std::size_t i = 0; i < size; ++i) subset[i] = points[comb[i]];
            if (is_shattered(fc, subset, gamma, opts)) {
                found = true;
                break;
            }
        } while (next_combination(comb, points.size()));
        if (!found) break;
        best = size;
    }
    return best;
}

std::size_t vc_dim(const FunctionClass& fc) {
    if (!fc.is_binary()) {
        throw std::invalid_argument("vc_dim: class must be {0,1}-valued");
    }
    const std::size_t max_size =
        std::min(fc.num_points(), floor_log2(fc.num_functions()));

    std::size_t best = 0;
    std::vector<bool> patterns;
    for (std::size_t size = 1; size <= max_size; ++size) {
        bool found = false;
        auto comb = first_combination(size);
        do {
            patterns.assign(std::size_t{1} << size, false);
            std::size_t seen = 0;
            for (std::size_t row = 0; row < fc.num_functions() && seen < patterns.size();
                 ++row) {
                std::size_t pattern = 0;
                for (std::size_t k = 0; k < size; ++k) {
                    if (fc.value(row, comb[k]) == 1.0) pattern |= std::size_t{1} << k;
                }
                if (!patterns[pattern]) {
                    patterns[pattern] = true;
                    ++seen;
                }
            }
            if (seen == patterns.size()) {
                found = true;
                break;
            }
        } while (next_combination(comb, fc.num_points()));
        if (!found) break;
        best = size;
    }
    return best;
}

bool check_certificate(const FunctionClass& fc, const ShatterCertificate& cert) {
    const std::size_t size = cert.subset.size();
    if (cert.witness.size() != size) return false;
    if (cert.assignment.size() != (std::size_t{1} << size)) return false;
    for (std::size_t mask = 0; mask < cert.assignment.size(); ++mask) {
        const std::size_t row = cert.assignment[mask];
        if (row >= fc.num_functions()) return false;
        for (std::size_t k = 0; k < size; ++k) {
            const double v = fc.value(row, cert.subset[k]);
            if ((mask >> k) & 1) {
                if (!(v >= cert.witness[k] + cert.gamma)) return false;
            } else {
                if (!(v <= cert.witness[k] - cert.gamma)) return false;
            }
        }
    }
    return true;
}

}  // namespace fatshatter
