#include <cp3o/oracle.hpp>

#include <cp3o/energy.hpp>
#include <cp3o/search.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <functional>
#include <limits>
#include <stdexcept>

namespace cp3o {

namespace {

double binomial(std::size_t n, std::size_t k) {
    double out = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out;
}

} // namespace

double segmentation_objective(const TimeSeries& series, const Segmentation& segmentation,
                              double alpha) {
    double total = 0.0;
    std::size_t lo = 1;
    const auto& cps = segmentation.change_points;
    for (std::size_t j = 0; j < cps.size(); ++j) {
        const std::size_t hi = j + 1 < cps.size() ? cps[j + 1] : series.length();
        total += divergence(series.view(lo, cps[j]), series.view(cps[j] + 1, hi), alpha, 2, false);
        lo = cps[j] + 1;
    }
    return total;
}

ExhaustiveResult exhaustive_gof(const TimeSeries& series, std::size_t k, double alpha,
                                std::size_t min_segment) {
    const std::size_t T = series.length();
    if (k == 0 || (k + 1) * min_segment > T) {
        throw std::invalid_argument("no admissible segmentation for the requested change count");
    }
    if (binomial(T - 1, k) > exhaustive_budget) {
        throw std::length_error("exhaustive enumeration exceeds its combinatorial budget");
    }

    ExhaustiveResult best{-std::numeric_limits<double>::infinity(), {{}, T}};
    std::vector<std::size_t> taus(k);
    // Lexicographic enumeration; each level also leaves room for the
    // remaining segments.
    std::function<void(std::size_t, std::size_t)> place = [&](std::size_t level,
                                                              std::size_t lo) {
        const std::size_t remaining = k - level;
        for (std::size_t tau = lo; tau + remaining * min_segment <= T; ++tau) {
            taus[level] = tau;
            if (level + 1 < k) {
                place(level + 1, tau + min_segment);
                continue;
            }
            Segmentation candidate{taus, T};
            const double value = segmentation_objective(series, candidate, alpha);
            if (value > best.value) {
                best.value = value;
                best.segmentation = std::move(candidate);
            }
        }
    };
    place(0, min_segment);
    return best;
}

ExactDpResult exact_dynamic_program(const TimeSeries& series, std::size_t max_k, double alpha,
                                    std::size_t delta, bool use_incomplete) {
    const std::size_t T = series.length();
    const std::size_t m = delta + 1;
    if (max_k == 0 || (max_k + 1) * m > T) {
        throw std::invalid_argument("no admissible segmentation for the requested change count");
    }
    const SplitDivergence divergence(series, alpha, delta, use_incomplete);
    const std::size_t W = T + 1;
    constexpr double unset = -std::numeric_limits<double>::infinity();

    // best[k-1][t*W+u]: optimum over prefixes 1..u with k change points, the
    // last at t. from[k-1][t*W+u]: the change point before t (0 for k = 1).
    std::vector<std::vector<double>> best(max_k, std::vector<double>(W * W, unset));
    std::vector<std::vector<std::size_t>> from(max_k, std::vector<std::size_t>(W * W, 0));
    for (std::size_t t = m; t + m <= T; ++t) {
        for (std::size_t u = t + m; u <= T; ++u) {
            best[0][t * W + u] = divergence(0, t, u);
        }
    }
    for (std::size_t k = 2; k <= max_k; ++k) {
        const auto& below = best[k - 2];
        auto& cur = best[k - 1];
        auto& arg = from[k - 1];
        for (std::size_t t = k * m; t + m <= T; ++t) {
            for (std::size_t u = t + m; u <= T; ++u) {
                double top = unset;
                std::size_t top_v = 0;
                for (std::size_t v = (k - 1) * m; v + m <= t; ++v) {
                    const double value = below[v * W + t] + divergence(v, t, u);
                    if (value > top) {
                        top = value;
                        top_v = v;
                    }
                }
                cur[t * W + u] = top;
                arg[t * W + u] = top_v;
            }
        }
    }

    ExactDpResult out;
    for (std::size_t k = 1; k <= max_k; ++k) {
        double top = unset;
        std::size_t top_t = 0;
        for (std::size_t t = k * m; t + m <= T; ++t) {
            if (best[k - 1][t * W + T] > top) {
                top = best[k - 1][t * W + T];
                top_t = t;
            }
        }
        std::vector<std::size_t> cps{top_t};
        std::size_t t = top_t;
        std::size_t u = T;
        for (std::size_t j = k; j >= 2; --j) {
            const std::size_t v = from[j - 1][t * W + u];
            cps.push_back(v);
            u = t;
            t = v;
        }
        std::reverse(cps.begin(), cps.end());
        out.gof.push_back(top);
        out.segmentations.push_back(Segmentation{std::move(cps), T});
    }
    return out;
}

std::vector<OracleCase> oracle_grid(std::size_t cases, std::size_t max_length, std::uint64_t seed) {
    constexpr std::size_t min_length = 18;
    if (max_length < min_length) {
        throw std::invalid_argument("oracle grid needs a maximum length of at least 18");
    }
    std::vector<OracleCase> grid;
    grid.reserve(cases);
    const std::size_t span = max_length - min_length + 1;
    for (std::size_t i = 0; i < cases; ++i) {
        std::mt19937_64 rng(seed + i);
        const std::size_t T = min_length + i % span;
        std::uniform_real_distribution<double> level(-4.0, 4.0);
        std::bernoulli_distribution shift(0.12);
        std::normal_distribution<double> noise(0.0, 1.0);
        std::vector<double> x(T);
        double mean = level(rng);
        std::size_t since = 0;
        for (std::size_t t = 0; t < T; ++t) {
            if (since >= oracle_min_segment && shift(rng)) {
                mean = level(rng);
                since = 0;
            }
            x[t] = mean + noise(rng);
            ++since;
        }
        grid.push_back({i, seed + i, 1 + i % 3, TimeSeries::univariate(std::move(x))});
    }
    return grid;
}

OracleCheck check_oracle_case(const OracleCase& c, double tolerance, double dp_offset) {
    DetectorConfig config;
    config.delta = oracle_min_segment - 1;
    config.max_change_points = 3;
    config.use_incomplete = false;
    config.use_pruning = false;
    const auto validated = validate_config(config, c.series);
    std::mt19937_64 rng(c.seed);
    const auto search = run_search(c.series, validated, rng);
    const auto exhaustive = exhaustive_gof(c.series, c.k, config.alpha, oracle_min_segment);

    OracleCheck check;
    check.dp_value = search.curve.at(c.k) + dp_offset;
    check.dp_segmentation = search.segmentations[c.k - 1];
    check.oracle_value = exhaustive.value;
    check.oracle_segmentation = exhaustive.segmentation;
    check.value_match = std::abs(check.dp_value - check.oracle_value) <= tolerance;
    check.segmentation_match = check.dp_segmentation == check.oracle_segmentation;
    return check;
}

OracleCheck check_exact_case(const OracleCase& c, double tolerance) {
    const auto exact = exact_dynamic_program(c.series, c.k, 1.0, oracle_min_segment - 1, false);
    const auto exhaustive = exhaustive_gof(c.series, c.k, 1.0, oracle_min_segment);
    OracleCheck check;
    check.dp_value = exact.gof[c.k - 1];
    check.dp_segmentation = exact.segmentations[c.k - 1];
    check.oracle_value = exhaustive.value;
    check.oracle_segmentation = exhaustive.segmentation;
    check.value_match = std::abs(check.dp_value - check.oracle_value) <= tolerance;
    check.segmentation_match = check.dp_segmentation == check.oracle_segmentation;
    return check;
}

DetectionResult complete_reference_detect(const TimeSeries& series, const DetectorConfig& config) {
    DetectorConfig reference = config;
    reference.use_incomplete = false;
    reference.use_pruning = false;
    return detect(series, reference);
}

} // namespace cp3o
