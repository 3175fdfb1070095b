#pragma once

#include <cp3o/core.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace cp3o::testing {

// O(n^2) Kendall tau-a.
inline double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double concordance = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = (x[i] - x[j]) * (y[i] - y[j]);
            concordance += s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
        }
    }
    return concordance / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

inline TimeSeries gaussian_series(std::size_t n, std::size_t dim, double mean, double sd,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(mean, sd);
    std::vector<double> data(n * dim);
    for (auto& v : data) {
        v = noise(rng);
    }
    return TimeSeries(n, dim, std::move(data));
}

inline TimeSeries concat(const TimeSeries& a, const TimeSeries& b) {
    std::vector<double> data(a.data().begin(), a.data().end());
    data.insert(data.end(), b.data().begin(), b.data().end());
    return TimeSeries(a.length() + b.length(), a.dim(), std::move(data));
}

} // namespace cp3o::testing
