#pragma once

#include <cp3o/core.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace cp3o {

struct IndexPair {
    std::size_t first;
    std::size_t second;
    bool operator==(const IndexPair&) const = default;
    auto operator<=>(const IndexPair&) const = default;
};

// Index pairs entering the incomplete statistic for X = {a, ..., a+n-1} and
// Y = {a+n, ..., a+n+m-1}. Indices are absolute.
struct PairSets {
    std::vector<IndexPair> within_x;
    std::vector<IndexPair> within_y;
    std::vector<IndexPair> between;
};

// ||x - y||_2 ^ alpha. Throws std::invalid_argument on a dimension mismatch.
double alpha_distance(std::span<const double> x, std::span<const double> y, double alpha);

// Two-sample energy statistic with U-statistic normalisation. Can be negative.
// Requires |X|, |Y| >= 2.
double complete_energy(const ObservationSet& x, const ObservationSet& y, double alpha);

PairSets build_pair_sets(std::size_t x_start, std::size_t n, std::size_t m, std::size_t delta);

// Incomplete energy statistic over the pair sets anchored at the X/Y split.
// X and Y are treated as concatenated, X first; they need not be adjacent in
// the parent series. Not symmetric in X and Y.
double incomplete_energy(const ObservationSet& x, const ObservationSet& y, double alpha,
                         std::size_t delta);

// mn/(m+n)^2 times the complete or incomplete statistic.
double divergence(const ObservationSet& x, const ObservationSet& y, double alpha,
                  std::size_t delta, bool use_incomplete);

// Divergence between adjacent segments of one series, answered in O(1) from
// tables built once per series. Incomplete mode keeps O(T*delta) window and
// block sums plus per-split running sums along the mirrored diagonal;
// complete mode keeps a (T+1)^2 prefix table of pairwise distances.
class SplitDivergence {
public:
    SplitDivergence(const TimeSeries& series, double alpha, std::size_t delta,
                    bool use_incomplete);

    // divergence(Z_{v+1..t}, Z_{t+1..u}), 0 <= v < t < u <= T, each side
    // holding at least two observations.
    double operator()(std::size_t v, std::size_t t, std::size_t u) const;

    const TimeSeries& series() const { return *series_; }
    double alpha() const { return alpha_; }
    std::size_t delta() const { return delta_; }
    bool incomplete() const { return incomplete_; }

private:
    double incomplete_at(std::size_t v, std::size_t t, std::size_t u) const;
    double complete_at(std::size_t v, std::size_t t, std::size_t u) const;
    double dist(std::size_t i, std::size_t j) const;

    const TimeSeries* series_;
    double alpha_;
    std::size_t delta_;
    bool incomplete_;
    std::size_t length_;

    // Incomplete tables, all 0-based absolute positions.
    std::vector<double> consecutive_;       // consecutive_[i] = sum_{j<i} d(j, j+1)
    std::vector<double> window_;            // all pairs in [e-delta+1, e], indexed by e
    std::vector<double> block_;             // [p-delta, p) x [p, p+delta), indexed by p
    std::vector<std::vector<double>> mirror_; // mirror_[p][L-delta] = sum_{i=delta+1}^{L} d(p-i, p+i-1)

    // Complete table: prefix_[i*(T+1)+j] = sum_{a<i, b<j} d(a, b).
    std::vector<double> prefix_;
};

} // namespace cp3o
