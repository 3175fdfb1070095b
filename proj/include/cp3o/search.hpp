#pragma once

#include <cp3o/core.hpp>
#include <cp3o/energy.hpp>
#include <cp3o/selection.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace cp3o {

// zeta(k, t): best objective for Z_1..Z_t with k change points. prev(k, t) is
// the last change point of that optimal prefix (0 for k = 0). Layer 0 holds
// the unsegmented prefixes so every layer uses the same transition.
class DPTable {
public:
    DPTable(std::size_t max_k, std::size_t length, std::size_t min_segment);

    std::size_t max_k() const { return max_k_; }
    std::size_t length() const { return length_; }
    std::size_t min_segment() const { return min_segment_; }

    // (k+1) * min_segment <= t <= T.
    bool feasible(std::size_t k, std::size_t t) const {
        return k <= max_k_ && t <= length_ && t >= (k + 1) * min_segment_;
    }
    bool filled(std::size_t k, std::size_t t) const { return filled_[index(k, t)] != 0; }

    double zeta(std::size_t k, std::size_t t) const { return zeta_[index(k, t)]; }
    std::size_t prev(std::size_t k, std::size_t t) const { return prev_[index(k, t)]; }

    void set(std::size_t k, std::size_t t, double value, std::size_t previous);

    // Walks back-pointers from (k, t). Throws std::logic_error if the chain
    // crosses an unfilled cell.
    Segmentation reconstruct(std::size_t k, std::size_t t) const;
    Segmentation reconstruct(std::size_t k) const { return reconstruct(k, length_); }

private:
    std::size_t index(std::size_t k, std::size_t t) const { return k * (length_ + 1) + t; }

    std::size_t max_k_;
    std::size_t length_;
    std::size_t min_segment_;
    std::vector<double> zeta_;
    std::vector<std::size_t> prev_;
    std::vector<char> filled_;
};

struct PruneThreshold {
    double gamma_epsilon = 0.0;
    double epsilon = 0.0;
    std::size_t sample_count = 0;
};

inline constexpr std::size_t max_quadruple_rejections = 1'000'000;

// Empirical (1 - epsilon) quantile, ceiling rank, of
// R(Z_{v+1..t}, Z_{t+1..u}) - R(Z_{v+1..t}, Z_{t+1..s}) - R(Z_{t+1..s}, Z_{s+1..u})
// over quadruples 1 <= v < t < s < u <= T spaced at least delta apart.
// Throws ConfigError if no quadruple fits or rejection sampling gives up.
PruneThreshold estimate_gamma(const SplitDivergence& divergence, double epsilon,
                              std::size_t samples, std::mt19937_64& rng);
PruneThreshold estimate_gamma(const TimeSeries& series, const ValidatedConfig& config,
                              std::mt19937_64& rng);

// Ceiling-rank order statistic: the ceil(q * N)-th smallest value.
double upper_quantile(std::vector<double> values, double q);

// Candidate t (whose transition into s evaluates to zeta_prev_t + transition)
// cannot precede any later u, with probability >= 1 - epsilon, when this holds.
inline bool prune_condition(double zeta_prev_t, double transition, double gamma,
                            double zeta_prev_s) {
    return zeta_prev_t + transition + gamma < zeta_prev_s;
}

// Shrinking set of candidate change points for one DP layer. A candidate
// pruned while sweeping s stays usable until u = s + min_segment, the first
// end point at which s itself can precede u.
class CandidateSet {
public:
    explicit CandidateSet(std::size_t min_segment) : min_segment_(min_segment) {}

    void add(std::size_t t) { entries_.push_back({t, never}); }
    void prune(std::size_t position, std::size_t s);
    // Drops candidates whose removal has taken effect at u.
    void advance(std::size_t u);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t at(std::size_t position) const { return entries_[position].t; }

private:
    static constexpr std::size_t never = std::numeric_limits<std::size_t>::max();
    struct Entry {
        std::size_t t;
        std::size_t removal;
    };
    std::size_t min_segment_;
    std::vector<Entry> entries_;
};

struct SearchStats {
    std::uint64_t evaluations = 0;
    std::uint64_t pruned = 0;
};

// Fills layer k from layer k-1. threshold == nullptr disables pruning.
void dp_layer(const SplitDivergence& divergence, std::size_t k, DPTable& table,
              const PruneThreshold* threshold, SearchStats& stats);

struct SearchResult {
    DPTable table;
    GofCurve curve;
    // segmentations[k-1] holds the optimal k-change-point segmentation.
    std::vector<Segmentation> segmentations;
    std::optional<PruneThreshold> threshold;
    SearchStats stats;
    double elapsed_seconds = 0.0;
};

SearchResult run_search(const TimeSeries& series, const ValidatedConfig& config,
                        std::mt19937_64& rng);

} // namespace cp3o
