#include <cp3o/search.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cp3o {

DPTable::DPTable(std::size_t max_k, std::size_t length, std::size_t min_segment)
    : max_k_(max_k), length_(length), min_segment_(min_segment),
      zeta_((max_k + 1) * (length + 1), 0.0), prev_((max_k + 1) * (length + 1), 0),
      filled_((max_k + 1) * (length + 1), 0) {
    if (min_segment_ < 1) {
        throw std::invalid_argument("minimum segment length must be positive");
    }
}

void DPTable::set(std::size_t k, std::size_t t, double value, std::size_t previous) {
    if (!feasible(k, t)) {
        std::ostringstream msg;
        msg << "cell (" << k << ", " << t << ") is infeasible";
        throw std::out_of_range(msg.str());
    }
    const auto i = index(k, t);
    zeta_[i] = value;
    prev_[i] = previous;
    filled_[i] = 1;
}

Segmentation DPTable::reconstruct(std::size_t k, std::size_t t) const {
    std::vector<std::size_t> cps;
    cps.reserve(k);
    std::size_t cur = t;
    for (std::size_t j = k; j >= 1; --j) {
        if (!feasible(j, cur) || !filled(j, cur)) {
            std::ostringstream msg;
            msg << "back-pointer chain reaches unfilled cell (" << j << ", " << cur << ")";
            throw std::logic_error(msg.str());
        }
        cur = prev(j, cur);
        cps.push_back(cur);
    }
    std::reverse(cps.begin(), cps.end());
    return Segmentation{std::move(cps), length_};
}

double upper_quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const double scaled = q * static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

PruneThreshold estimate_gamma(const SplitDivergence& divergence, double epsilon,
                              std::size_t samples, std::mt19937_64& rng) {
    const std::size_t T = divergence.series().length();
    const std::size_t d = divergence.delta();
    if (T < 3 * d + 1) {
        std::ostringstream msg;
        msg << "no quadruple with spacing " << d << " fits a series of length " << T;
        throw ConfigError({msg.str()});
    }
    if (samples == 0) {
        throw ConfigError({"gamma sample count must be positive"});
    }

    std::uniform_int_distribution<std::size_t> index(1, T);
    std::vector<double> stats;
    stats.reserve(samples);
    std::size_t rejections = 0;
    while (stats.size() < samples) {
        std::array<std::size_t, 4> q{index(rng), index(rng), index(rng), index(rng)};
        std::sort(q.begin(), q.end());
        const auto [v, t, s, u] = q;
        if (t - v < d || s - t < d || u - s < d) {
            if (++rejections > max_quadruple_rejections) {
                throw ConfigError({"quadruple rejection sampling exceeded its budget"});
            }
            continue;
        }
        stats.push_back(divergence(v, t, u) - divergence(v, t, s) - divergence(t, s, u));
    }
    return {upper_quantile(std::move(stats), 1.0 - epsilon), epsilon, samples};
}

PruneThreshold estimate_gamma(const TimeSeries& series, const ValidatedConfig& config,
                              std::mt19937_64& rng) {
    const auto& c = config.config;
    const SplitDivergence divergence(series, c.alpha, c.delta, c.use_incomplete);
    return estimate_gamma(divergence, c.epsilon, c.resolved_gamma_samples(), rng);
}

void CandidateSet::prune(std::size_t position, std::size_t s) {
    auto& entry = entries_[position];
    if (entry.removal == never) {
        entry.removal = s + min_segment_;
    }
}

void CandidateSet::advance(std::size_t u) {
    std::erase_if(entries_, [u](const Entry& e) { return e.removal <= u; });
}

void dp_layer(const SplitDivergence& divergence, std::size_t k, DPTable& table,
              const PruneThreshold* threshold, SearchStats& stats) {
    if (k == 0) {
        throw std::invalid_argument("layer 0 is the unsegmented base");
    }
    const std::size_t m = table.min_segment();
    const std::size_t T = table.length();
    const std::size_t first_u = (k + 1) * m;

    auto transition = [&](std::size_t t, std::size_t u) {
        ++stats.evaluations;
        return table.zeta(k - 1, t) + divergence(table.prev(k - 1, t), t, u);
    };

    if (threshold == nullptr) {
        for (std::size_t u = first_u; u <= T; ++u) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_t = 0;
            for (std::size_t t = k * m; t + m <= u; ++t) {
                const double value = transition(t, u);
                if (value > best) {
                    best = value;
                    best_t = t;
                }
            }
            table.set(k, u, best, best_t);
        }
        return;
    }

    // Each new end point u admits t = u - m, which cannot have been pruned
    // yet, so the set is never empty here.
    CandidateSet candidates(m);
    for (std::size_t u = first_u; u <= T; ++u) {
        candidates.add(u - m);
        candidates.advance(u);
        const double bar = table.zeta(k - 1, u);
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_t = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const std::size_t t = candidates.at(i);
            const double base = table.zeta(k - 1, t);
            const double step = divergence(table.prev(k - 1, t), t, u);
            ++stats.evaluations;
            const double value = base + step;
            if (value > best) {
                best = value;
                best_t = t;
            }
            if (prune_condition(base, step, threshold->gamma_epsilon, bar)) {
                candidates.prune(i, u);
                ++stats.pruned;
            }
        }
        table.set(k, u, best, best_t);
    }
}

SearchResult run_search(const TimeSeries& series, const ValidatedConfig& config,
                        std::mt19937_64& rng) {
    const auto clock_start = std::chrono::steady_clock::now();
    const auto& c = config.config;
    const std::size_t T = series.length();
    const std::size_t K = c.max_change_points;
    const std::size_t m = c.min_segment();

    const SplitDivergence divergence(series, c.alpha, c.delta, c.use_incomplete);
    std::optional<PruneThreshold> threshold;
    if (c.use_pruning) {
        threshold = estimate_gamma(divergence, c.epsilon, c.resolved_gamma_samples(), rng);
    }

    DPTable table(K, T, m);
    for (std::size_t t = m; t <= T; ++t) {
        table.set(0, t, 0.0, 0);
    }
    SearchStats stats;
    for (std::size_t k = 1; k <= K; ++k) {
        dp_layer(divergence, k, table, threshold ? &*threshold : nullptr, stats);
    }

    GofCurve curve;
    std::vector<Segmentation> segmentations;
    for (std::size_t k = 1; k <= K; ++k) {
        curve.values.push_back(table.zeta(k, T));
        segmentations.push_back(table.reconstruct(k));
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return SearchResult{std::move(table), std::move(curve), std::move(segmentations), threshold,
                        stats, elapsed};
}

} // namespace cp3o
