#include "fatshatter/empirical_process.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fatshatter/chaining.hpp"
#include "fatshatter/errors.hpp"
#include "fatshatter/numeric.hpp"
#include "fatshatter/parallel.hpp"
#include "fatshatter/rng.hpp"

namespace fatshatter {

namespace {

// Cap on state counts for full enumerations (samples, or samples x signs).
constexpr double kEnumCap = 67108864.0;  // 2^26

double mc_half_width(double p, std::size_t trials) {
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<double> exact_means(const FunctionClass& fc, const Distribution& dist) {
    std::vector<double> mus(fc.num_functions());
    for (std::size_t f = 0; f < fc.num_functions(); ++f) mus[f] = exact_mean(fc, f, dist);
    return mus;
}

double sup_deviation_draw(const FunctionClass& fc, const Distribution& dist,
                          const std::vector<double>& mus, std::size_t m, Rng& rng) {
    std::vector<std::uint32_t> counts(fc.num_points(), 0);
    for (std::size_t i = 0; i < m; ++i) ++counts[dist.sample(rng)];
    double sup = 0.0;
    for (std::size_t f = 0; f < fc.num_functions(); ++f) {
        double acc = 0.0;
        for (std::size_t x = 0; x < fc.num_points(); ++x) {
            if (counts[x] != 0) acc += static_cast<double>(counts[x]) * fc.value(f, x);
        }
        sup = std::max(sup, std::fabs(acc / static_cast<double>(m) - mus[f]));
    }
    return sup;
}

// Depth-first walk over all tuples in X^k carrying the product weight.
template <class Fn>
void weighted_tuples(const Distribution& dist, std::size_t k, std::vector<std::size_t>& tuple,
                     std::size_t depth, double weight, Fn& fn) {
    if (depth == k) {
        fn(tuple, weight);
        return;
    }
    for (std::size_t x = 0; x < dist.size(); ++x) {
        const double w = weight * dist.weight(x);
        if (w == 0.0) continue;
        tuple[depth] = x;
        weighted_tuples(dist, k, tuple, depth + 1, w, fn);
    }
}

template <class Fn>
void all_tuples(std::size_t domain, std::size_t k, std::vector<std::size_t>& tuple,
                std::size_t depth, Fn& fn) {
    if (depth == k) {
        fn(tuple);
        return;
    }
    for (std::size_t x = 0; x < domain; ++x) {
        tuple[depth] = x;
        all_tuples(domain, k, tuple, depth + 1, fn);
    }
}

void check_vectors(const std::vector<std::vector<double>>& vectors, std::size_t m) {
    if (m == 0) throw std::invalid_argument("rademacher_sup_tail: m must be positive");
    for (const auto& v : vectors) {
        if (v.size() != 2 * m) {
            throw std::invalid_argument("rademacher_sup_tail: vectors must have length 2m");
        }
    }
}

// Sup over the difference vectors of |sum_i xi_i d_v(i)| / m, for the sign
// assignment encoded by the Gray code of `state`.
std::uint64_t count_exceeding_block(const std::vector<std::vector<double>>& diffs, std::size_t m,
                                    double threshold, std::uint64_t begin, std::uint64_t end) {
    const std::size_t nvec = diffs.size();
    std::vector<double> sums(nvec, 0.0);
    const std::uint64_t gray = begin ^ (begin >> 1);
    for (std::size_t v = 0; v < nvec; ++v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            acc += ((gray >> i) & 1) ? -diffs[v][i] : diffs[v][i];
        }
        sums[v] = acc;
    }
    std::vector<int> signs(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if ((gray >> i) & 1) signs[i] = -1;
    }
    std::uint64_t count = 0;
    for (std::uint64_t state = begin; state < end; ++state) {
        if (state != begin) {
            const int flip = std::countr_zero(state);
            const double delta = -2.0 * signs[flip];
            signs[flip] = -signs[flip];
            for (std::size_t v = 0; v < nvec; ++v) sums[v] += delta * diffs[v][flip];
        }
        double sup = 0.0;
        for (double s : sums) sup = std::max(sup, std::fabs(s));
        if (sup / static_cast<double>(m) > threshold) ++count;
    }
    return count;
}

}  // namespace

double sup_deviation(const FunctionClass& fc, const Distribution& dist, std::size_t m,
                     std::uint64_t seed) {
    if (m == 0) throw std::invalid_argument("sup_deviation: m must be positive");
    if (dist.size() != fc.num_points()) {
        throw std::invalid_argument("sup_deviation: distribution/class dimension mismatch");
    }
    const auto mus = exact_means(fc, dist);
    Rng rng(seed);
    return sup_deviation_draw(fc, dist, mus, m, rng);
}

TailEstimate tail_probability_mc(const FunctionClass& fc, const Distribution& dist,
                                 std::size_t m, double epsilon, std::size_t trials,
                                 std::uint64_t seed, unsigned threads) {
    if (trials == 0) throw std::invalid_argument("tail_probability_mc: trials must be >= 1");
    if (dist.size() != fc.num_points()) {
        throw std::invalid_argument("tail_probability_mc: distribution/class dimension mismatch");
    }
    const auto mus = exact_means(fc, dist);
    const std::uint64_t hits = block_reduce<std::uint64_t>(
        trials, threads, 0, [&](std::size_t lo, std::size_t hi, std::uint64_t acc) {
            for (std::size_t t = lo; t < hi; ++t) {
                Rng rng = Rng::stream(seed, t);
                if (sup_deviation_draw(fc, dist, mus, m, rng) > epsilon) ++acc;
            }
            return acc;
        });
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return TailEstimate{p, trials, mc_half_width(p, trials), seed, false};
}

TailEstimate tail_probability_exact(const FunctionClass& fc, const Distribution& dist,
                                    std::size_t m, double epsilon) {
    if (dist.size() != fc.num_points()) {
        throw std::invalid_argument("tail_probability_exact: dimension mismatch");
    }
    const double states = std::pow(static_cast<double>(fc.num_points()), static_cast<double>(m));
    if (states > kEnumCap) {
        throw SizeLimitError("tail_probability_exact: |X|^m = " + std::to_string(states) +
                             " exceeds the enumeration cap");
    }
    const auto mus = exact_means(fc, dist);
    double mass = 0.0;
    std::size_t visited = 0;
    std::vector<std::size_t> tuple(m, 0);
    auto visit = [&](const std::vector<std::size_t>& sample, double weight) {
        ++visited;
        double sup = 0.0;
        for (std::size_t f = 0; f < fc.num_functions(); ++f) {
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) acc += fc.value(f, sample[i]);
            sup = std::max(sup, std::fabs(acc / static_cast<double>(m) - mus[f]));
        }
        if (sup > epsilon) mass += weight;
    };
    weighted_tuples(dist, m, tuple, 0, 1.0, visit);
    return TailEstimate{mass, visited, 0.0, 0, true};
}

TailEstimate rademacher_sup_tail(const std::vector<std::vector<double>>& vectors, std::size_t m,
                                 double threshold, const RademacherLaw& law, unsigned threads) {
    check_vectors(vectors, m);
    std::vector<std::vector<double>> diffs(vectors.size(), std::vector<double>(m));
    for (std::size_t v = 0; v < vectors.size(); ++v) {
        for (std::size_t i = 0; i < m; ++i) diffs[v][i] = vectors[v][i] - vectors[v][m + i];
    }
    if (law.exact_mode) {
        if (m > 20) {
            throw SizeLimitError("rademacher_sup_tail: exact enumeration capped at m = 20");
        }
        const std::uint64_t states = std::uint64_t{1} << m;
        const std::uint64_t hits = block_reduce<std::uint64_t>(
            states, threads, 0, [&](std::size_t lo, std::size_t hi, std::uint64_t acc) {
                return acc + count_exceeding_block(diffs, m, threshold, lo, hi);
            });
        // Dyadic division: exact, so identical runs are bit-identical.
        const double p = static_cast<double>(hits) / static_cast<double>(states);
        return TailEstimate{p, states, 0.0, 0, true};
    }
    if (law.trials == 0) {
        throw std::invalid_argument("rademacher_sup_tail: sampled law needs trials >= 1");
    }
    const std::uint64_t hits = block_reduce<std::uint64_t>(
        law.trials, threads, 0, [&](std::size_t lo, std::size_t hi, std::uint64_t acc) {
            std::vector<int> signs(m);
            for (std::size_t t = lo; t < hi; ++t) {
                Rng rng = Rng::stream(law.seed, t);
                for (auto& s : signs) s = rng.next_sign();
                double sup = 0.0;
                for (const auto& d : diffs) {
                    double s_acc = 0.0;
                    for (std::size_t i = 0; i < m; ++i) s_acc += signs[i] * d[i];
                    sup = std::max(sup, std::fabs(s_acc));
                }
                if (sup / static_cast<double>(m) > threshold) ++acc;
            }
            return acc;
        });
    const double p = static_cast<double>(hits) / static_cast<double>(law.trials);
    return TailEstimate{p, law.trials, mc_half_width(p, law.trials), law.seed, false};
}

double hoeffding_tail(std::span<const double> h, std::size_t m, double eps_j) {
    if (!(eps_j > 0.0)) throw std::invalid_argument("hoeffding_tail: eps_j must be positive");
    const double denom = increment_halved_norm(h, m);
    if (denom == 0.0) return 0.0;
    const double md = static_cast<double>(m);
    return 2.0 * std::exp(-0.5 * eps_j * eps_j * md * md / denom);
}

double multiscale_bound(const std::vector<std::vector<std::vector<double>>>& levels,
                        std::size_t m, const std::vector<double>& schedule,
                        std::optional<double> epsilon) {
    if (levels.size() != schedule.size()) {
        throw std::invalid_argument("multiscale_bound: schedule/levels length mismatch");
    }
    for (double eps_j : schedule) {
        if (!(eps_j > 0.0)) {
            throw std::invalid_argument("multiscale_bound: schedule entries must be positive");
        }
    }
    if (epsilon) {
        double total = 0.0;
        for (double eps_j : schedule) total += eps_j;
        if (total > *epsilon / 4.0 + 1e-12) {
            throw std::invalid_argument(
                "multiscale_bound: schedule sums beyond epsilon/4");
        }
    }
    double bound = 0.0;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        for (const auto& h : levels[j]) {
            bound += hoeffding_tail(h, m, schedule[j]);
        }
    }
    return bound;
}

std::vector<double> weight_schedule(std::size_t l) {
    std::vector<double> weights(l + 1);
    for (std::size_t j = 0; j <= l; ++j) {
        weights[j] = std::ldexp(1.0, 2 - static_cast<int>(j)) *
                     std::sqrt(static_cast<double>(j + 1)) / 44.0;
    }
    return weights;
}

double weight_schedule_sum(std::size_t l) {
    const auto weights = weight_schedule(l);
    double acc = 0.0;
    for (double w : weights) acc += w;
    return acc;
}

std::size_t symmetrization_threshold(double range_width, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("symmetrization_threshold: epsilon must be positive");
    }
    const double ratio = range_width / epsilon;
    return least_int_geq(4.0 * std::log(2.0) * ratio * ratio);
}

TailEstimate symmetrized_deviation_tail(const FunctionClass& fc, const Distribution& dist,
                                        std::size_t m, double epsilon, std::size_t trials,
                                        std::uint64_t seed, unsigned threads) {
    if (trials == 0) {
        throw std::invalid_argument("symmetrized_deviation_tail: trials must be >= 1");
    }
    if (dist.size() != fc.num_points()) {
        throw std::invalid_argument("symmetrized_deviation_tail: dimension mismatch");
    }
    const double threshold = epsilon / 2.0;
    const std::uint64_t hits = block_reduce<std::uint64_t>(
        trials, threads, 0, [&](std::size_t lo, std::size_t hi, std::uint64_t acc) {
            std::vector<std::size_t> sample(2 * m);
            for (std::size_t t = lo; t < hi; ++t) {
                Rng rng = Rng::stream(seed, t);
                for (auto& idx : sample) idx = dist.sample(rng);
                double sup = 0.0;
                for (std::size_t f = 0; f < fc.num_functions(); ++f) {
                    double s_acc = 0.0;
                    for (std::size_t i = 0; i < m; ++i) {
                        s_acc += fc.value(f, sample[i]) - fc.value(f, sample[m + i]);
                    }
                    sup = std::max(sup, std::fabs(s_acc));
                }
                if (sup / static_cast<double>(m) > threshold) ++acc;
            }
            return acc;
        });
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return TailEstimate{p, trials, mc_half_width(p, trials), seed, false};
}

TailEstimate symmetrized_tail_exact(const FunctionClass& fc, const Distribution& dist,
                                    std::size_t m, double epsilon) {
    if (dist.size() != fc.num_points()) {
        throw std::invalid_argument("symmetrized_tail_exact: dimension mismatch");
    }
    const double states =
        std::pow(static_cast<double>(fc.num_points()), 2.0 * static_cast<double>(m));
    if (states > kEnumCap) {
        throw SizeLimitError("symmetrized_tail_exact: |X|^2m exceeds the enumeration cap");
    }
    const double threshold = epsilon / 2.0;
    double mass = 0.0;
    std::size_t visited = 0;
    std::vector<std::size_t> tuple(2 * m, 0);
    auto visit = [&](const std::vector<std::size_t>& sample, double weight) {
        ++visited;
        double sup = 0.0;
        for (std::size_t f = 0; f < fc.num_functions(); ++f) {
            double s_acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                s_acc += fc.value(f, sample[i]) - fc.value(f, sample[m + i]);
            }
            sup = std::max(sup, std::fabs(s_acc));
        }
        if (sup / static_cast<double>(m) > threshold) mass += weight;
    };
    weighted_tuples(dist, 2 * m, tuple, 0, 1.0, visit);
    return TailEstimate{mass, visited, 0.0, 0, true};
}

double sup_rademacher_tail_over_samples(const FunctionClass& fc, std::size_t m,
                                        double threshold) {
    const double states =
        std::pow(static_cast<double>(fc.num_points()), 2.0 * static_cast<double>(m)) *
        std::ldexp(1.0, static_cast<int>(m));
    if (states > kEnumCap) {
        throw SizeLimitError(
            "sup_rademacher_tail_over_samples: |X|^2m * 2^m exceeds the enumeration cap");
    }
    double sup = 0.0;
    std::vector<std::size_t> tuple(2 * m, 0);
    auto visit = [&](const std::vector<std::size_t>& sample) {
        const auto restricted = restrict_class(fc, SampleVector(sample, m));
        const auto tail = rademacher_sup_tail(restricted.vectors, m, threshold,
                                              RademacherLaw::exact());
        sup = std::max(sup, tail.point_estimate);
    };
    all_tuples(fc.num_points(), 2 * m, tuple, 0, visit);
    return sup;
}

}  // namespace fatshatter
