#include <cp3o/core.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cp3o {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "invalid detector configuration";
    for (const auto& v : violations) {
        out += "; ";
        out += v;
    }
    return out;
}

} // namespace

TimeSeries::TimeSeries(std::size_t length, std::size_t dim, std::vector<double> data)
    : length_(length), dim_(dim), data_(std::move(data)) {
    if (length_ < 1 || dim_ < 1) {
        throw std::invalid_argument("time series needs at least one row and one column");
    }
    if (data_.size() != length_ * dim_) {
        throw std::invalid_argument("time series data size does not match T x d");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            std::ostringstream msg;
            msg << "non-finite value at row " << (i / dim_ + 1) << ", column " << (i % dim_ + 1);
            throw std::invalid_argument(msg.str());
        }
    }
}

TimeSeries TimeSeries::univariate(std::vector<double> values) {
    const std::size_t n = values.size();
    return TimeSeries(n, 1, std::move(values));
}

TimeSeries TimeSeries::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("time series needs at least one row");
    }
    const std::size_t dim = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) {
            std::ostringstream msg;
            msg << "row " << (i + 1) << " has " << rows[i].size() << " columns, expected " << dim;
            throw std::invalid_argument(msg.str());
        }
        data.insert(data.end(), rows[i].begin(), rows[i].end());
    }
    return TimeSeries(rows.size(), dim, std::move(data));
}

ObservationSet TimeSeries::view(std::size_t lo, std::size_t hi) const {
    return segment_view(*this, lo, hi);
}

ObservationSet segment_view(const TimeSeries& series, std::size_t lo, std::size_t hi) {
    if (lo < 1 || hi < lo || hi > series.length()) {
        std::ostringstream msg;
        msg << "segment [" << lo << ", " << hi << "] outside series of length " << series.length();
        throw std::out_of_range(msg.str());
    }
    return ObservationSet(series, lo, hi - lo + 1);
}

std::vector<std::size_t> Segmentation::segment_lengths() const {
    std::vector<std::size_t> lengths;
    lengths.reserve(change_points.size() + 1);
    std::size_t prev = 0;
    for (auto tau : change_points) {
        lengths.push_back(tau - prev);
        prev = tau;
    }
    lengths.push_back(series_length - prev);
    return lengths;
}

std::vector<std::size_t> Segmentation::labels() const {
    std::vector<std::size_t> out(series_length);
    std::size_t segment = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < series_length; ++i) {
        while (next < change_points.size() && i >= change_points[next]) {
            ++segment;
            ++next;
        }
        out[i] = segment;
    }
    return out;
}

std::size_t Segmentation::min_segment_length() const {
    const auto lengths = segment_lengths();
    return *std::min_element(lengths.begin(), lengths.end());
}

void Segmentation::check() const {
    std::size_t prev = 0;
    for (auto tau : change_points) {
        if (tau <= prev || tau >= series_length) {
            std::ostringstream msg;
            msg << "change point " << tau << " is not strictly increasing within [1, "
                << (series_length == 0 ? 0 : series_length - 1) << "]";
            throw std::invalid_argument(msg.str());
        }
        prev = tau;
    }
}

std::size_t DetectorConfig::resolved_gamma_samples() const {
    if (gamma_samples > 0) {
        return gamma_samples;
    }
    // 2/0.01 is not exactly representable; shave the ulp before rounding up.
    return static_cast<std::size_t>(std::ceil(2.0 / epsilon - 1e-9));
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

ValidatedConfig validate_config(const DetectorConfig& config, const TimeSeries& series) {
    std::vector<std::string> violations;
    std::ostringstream msg;
    auto flush = [&] {
        violations.push_back(msg.str());
        msg.str({});
    };

    if (!(config.alpha > 0.0 && config.alpha < 2.0)) {
        msg << "alpha out of range (0, 2): " << config.alpha;
        flush();
    }
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
        msg << "epsilon out of range (0, 1): " << config.epsilon;
        flush();
    }
    if (config.delta < 2) {
        msg << "delta must be at least 2: " << config.delta;
        flush();
    }
    if (config.max_change_points < 3) {
        msg << "max change points must be at least 3: " << config.max_change_points;
        flush();
    }
    const std::size_t T = series.length();
    const std::size_t needed = (config.max_change_points + 1) * config.min_segment();
    if (needed > T) {
        msg << "(K+1)*(delta+1) = " << needed << " exceeds series length " << T;
        flush();
    }
    if (!violations.empty()) {
        throw ConfigError(std::move(violations));
    }

    ValidatedConfig out{config, T, {}};
    const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(T))));
    if (config.delta > root) {
        msg << "delta = " << config.delta << " exceeds floor(sqrt(T)) = " << root;
        out.warnings.push_back(msg.str());
    }
    return out;
}

} // namespace cp3o
