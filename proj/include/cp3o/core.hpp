#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cp3o {

class ObservationSet;

// T x d matrix of observations stored time-major (row i is observation i+1).
class TimeSeries {
public:
    TimeSeries(std::size_t length, std::size_t dim, std::vector<double> data);

    static TimeSeries univariate(std::vector<double> values);
    static TimeSeries from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t length() const { return length_; }
    std::size_t dim() const { return dim_; }

    // 0-based row access.
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    std::span<const double> data() const { return data_; }

    // Rows lo..hi inclusive, 1-based.
    ObservationSet view(std::size_t lo, std::size_t hi) const;

    bool operator==(const TimeSeries&) const = default;

private:
    std::size_t length_;
    std::size_t dim_;
    std::vector<double> data_;
};

// Zero-copy window onto a contiguous run of rows of a TimeSeries. The series
// must outlive the view.
class ObservationSet {
public:
    ObservationSet(const TimeSeries& series, std::size_t start, std::size_t count)
        : series_(&series), start_(start), count_(count) {}

    std::size_t size() const { return count_; }
    std::size_t dim() const { return series_->dim(); }
    // Absolute 1-based index of the first row.
    std::size_t start() const { return start_; }
    std::size_t last() const { return start_ + count_ - 1; }

    // 0-based index relative to the view.
    std::span<const double> operator[](std::size_t i) const {
        return series_->row(start_ - 1 + i);
    }

    const TimeSeries& series() const { return *series_; }

private:
    const TimeSeries* series_;
    std::size_t start_;
    std::size_t count_;
};

// Throws std::out_of_range unless 1 <= lo <= hi <= T.
ObservationSet segment_view(const TimeSeries& series, std::size_t lo, std::size_t hi);

// Change points are the 1-based index of the last observation of each segment
// except the final one, so tau_0 = 0 and tau_{k+1} = T are implicit.
struct Segmentation {
    std::vector<std::size_t> change_points;
    std::size_t series_length = 0;

    std::size_t num_change_points() const { return change_points.size(); }
    std::vector<std::size_t> segment_lengths() const;
    // Segment label (0-based) of every observation.
    std::vector<std::size_t> labels() const;
    std::size_t min_segment_length() const;

    // Throws std::invalid_argument if change points are not strictly
    // increasing within [1, T-1].
    void check() const;

    bool operator==(const Segmentation&) const = default;
};

struct DetectorConfig {
    double alpha = 1.0;
    std::size_t delta = 29;
    std::size_t max_change_points = 9;
    double epsilon = 0.01;
    bool use_pruning = true;
    bool use_incomplete = true;
    // 0 selects ceil(2 / epsilon).
    std::size_t gamma_samples = 0;
    std::uint64_t seed = 0;
    // Use the 1/(K-1) variance of the Gof increments instead of 1/(K-2).
    bool biased_variance = false;

    std::size_t min_segment() const { return delta + 1; }
    std::size_t resolved_gamma_samples() const;
};

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct ValidatedConfig {
    DetectorConfig config;
    std::size_t series_length = 0;
    std::vector<std::string> warnings;
};

// Throws ConfigError listing every violated constraint.
ValidatedConfig validate_config(const DetectorConfig& config, const TimeSeries& series);

} // namespace cp3o
