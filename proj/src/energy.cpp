#include <cp3o/energy.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cp3o {

namespace {

double powered(double norm, double alpha) {
    return alpha == 1.0 ? norm : std::pow(norm, alpha);
}

double pairs_of(std::size_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
}

double split_weight(std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return nn * mm / ((nn + mm) * (nn + mm));
}

// Observation i of the concatenation X ++ Y.
std::span<const double> concat_row(const ObservationSet& x, const ObservationSet& y,
                                   std::size_t i) {
    return i < x.size() ? x[i] : y[i - x.size()];
}

double mean_over(const std::vector<IndexPair>& pairs, const ObservationSet& x,
                 const ObservationSet& y, double alpha) {
    double total = 0.0;
    for (const auto& [i, j] : pairs) {
        total += alpha_distance(concat_row(x, y, i), concat_row(x, y, j), alpha);
    }
    return total / static_cast<double>(pairs.size());
}

} // namespace

double alpha_distance(std::span<const double> x, std::span<const double> y, double alpha) {
    if (x.size() != y.size()) {
        std::ostringstream msg;
        msg << "dimension mismatch: " << x.size() << " vs " << y.size();
        throw std::invalid_argument(msg.str());
    }
    if (x.size() == 1) {
        return powered(std::abs(x[0] - y[0]), alpha);
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double diff = x[k] - y[k];
        sq += diff * diff;
    }
    return powered(std::sqrt(sq), alpha);
}

double complete_energy(const ObservationSet& x, const ObservationSet& y, double alpha) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (n < 2 || m < 2) {
        throw std::invalid_argument("complete energy statistic needs at least two observations per sample");
    }
    double between = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            between += alpha_distance(x[i], y[j], alpha);
        }
    }
    double within_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            within_x += alpha_distance(x[i], x[j], alpha);
        }
    }
    double within_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            within_y += alpha_distance(y[i], y[j], alpha);
        }
    }
    return 2.0 * between / (static_cast<double>(n) * static_cast<double>(m)) -
           within_x / pairs_of(n) - within_y / pairs_of(m);
}

PairSets build_pair_sets(std::size_t x_start, std::size_t n, std::size_t m, std::size_t delta) {
    const std::size_t a = x_start;
    const std::size_t split = a + n;
    const std::size_t end = split + m;
    PairSets sets;

    // Within X: every pair among the last delta points, then consecutive
    // pairs walking in from the far end.
    const std::size_t wx_lo = n > delta ? split - delta : a;
    for (std::size_t i = wx_lo; i < split; ++i) {
        for (std::size_t j = i + 1; j < split; ++j) {
            sets.within_x.push_back({i, j});
        }
    }
    for (std::size_t i = 0; i + delta < n; ++i) {
        sets.within_x.push_back({a + i, a + i + 1});
    }

    const std::size_t wy_hi = std::min(split + delta, end);
    for (std::size_t i = split; i < wy_hi; ++i) {
        for (std::size_t j = i + 1; j < wy_hi; ++j) {
            sets.within_y.push_back({i, j});
        }
    }
    for (std::size_t i = delta - 1; i + 2 <= m; ++i) {
        sets.within_y.push_back({split + i, split + i + 1});
    }

    // Between: the delta x delta block straddling the split, then pairs
    // mirrored about it.
    for (std::size_t i = wx_lo; i < split; ++i) {
        for (std::size_t j = split; j < wy_hi; ++j) {
            sets.between.push_back({i, j});
        }
    }
    const std::size_t reach = std::min(m, n);
    for (std::size_t i = delta + 1; i <= reach; ++i) {
        sets.between.push_back({split - i, split + i - 1});
    }
    return sets;
}

double incomplete_energy(const ObservationSet& x, const ObservationSet& y, double alpha,
                         std::size_t delta) {
    const auto sets = build_pair_sets(0, x.size(), y.size(), delta);
    if (sets.within_x.empty() || sets.within_y.empty() || sets.between.empty()) {
        throw std::invalid_argument("incomplete energy statistic has an empty pair set");
    }
    return 2.0 * mean_over(sets.between, x, y, alpha) - mean_over(sets.within_x, x, y, alpha) -
           mean_over(sets.within_y, x, y, alpha);
}

double divergence(const ObservationSet& x, const ObservationSet& y, double alpha,
                  std::size_t delta, bool use_incomplete) {
    const double stat = use_incomplete ? incomplete_energy(x, y, alpha, delta)
                                       : complete_energy(x, y, alpha);
    return split_weight(x.size(), y.size()) * stat;
}

SplitDivergence::SplitDivergence(const TimeSeries& series, double alpha, std::size_t delta,
                                 bool use_incomplete)
    : series_(&series), alpha_(alpha), delta_(delta), incomplete_(use_incomplete),
      length_(series.length()) {
    if (delta_ < 2) {
        throw std::invalid_argument("delta must be at least 2");
    }
    const std::size_t T = length_;
    if (!incomplete_) {
        const std::size_t W = T + 1;
        prefix_.assign(W * W, 0.0);
        for (std::size_t i = 0; i < T; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < T; ++j) {
                row_sum += i == j ? 0.0 : dist(i, j);
                prefix_[(i + 1) * W + j + 1] = prefix_[i * W + j + 1] + row_sum;
            }
        }
        return;
    }

    consecutive_.assign(T, 0.0);
    for (std::size_t i = 0; i + 1 < T; ++i) {
        consecutive_[i + 1] = consecutive_[i] + dist(i, i + 1);
    }

    const std::size_t d = delta_;
    window_.assign(T, 0.0);
    for (std::size_t e = d - 1; e < T; ++e) {
        double total = 0.0;
        for (std::size_t i = e + 1 - d; i <= e; ++i) {
            for (std::size_t j = i + 1; j <= e; ++j) {
                total += dist(i, j);
            }
        }
        window_[e] = total;
    }

    block_.assign(T + 1, 0.0);
    mirror_.resize(T + 1);
    for (std::size_t p = d; p + d <= T; ++p) {
        double total = 0.0;
        for (std::size_t i = p - d; i < p; ++i) {
            for (std::size_t j = p; j < p + d; ++j) {
                total += dist(i, j);
            }
        }
        block_[p] = total;

        const std::size_t reach = std::min(p, T - p);
        auto& run = mirror_[p];
        run.assign(reach - d + 1, 0.0);
        for (std::size_t L = d + 1; L <= reach; ++L) {
            run[L - d] = run[L - d - 1] + dist(p - L, p + L - 1);
        }
    }
}

double SplitDivergence::dist(std::size_t i, std::size_t j) const {
    return alpha_distance(series_->row(i), series_->row(j), alpha_);
}

double SplitDivergence::operator()(std::size_t v, std::size_t t, std::size_t u) const {
    return incomplete_ ? incomplete_at(v, t, u) : complete_at(v, t, u);
}

double SplitDivergence::incomplete_at(std::size_t v, std::size_t t, std::size_t u) const {
    const std::size_t n = t - v;
    const std::size_t m = u - t;
    const std::size_t d = delta_;
    if (n < d || m < d) {
        return divergence(series_->view(v + 1, t), series_->view(t + 1, u), alpha_, d, true);
    }
    const std::size_t p = t; // 0-based first index of Y
    const double base_pairs = pairs_of(d);

    const double wx = window_[p - 1] + (consecutive_[p - d] - consecutive_[v]);
    const double wx_count = base_pairs + static_cast<double>(n - d);
    const double wy = window_[p + d - 1] + (consecutive_[p + m - 1] - consecutive_[p + d - 1]);
    const double wy_count = base_pairs + static_cast<double>(m - d);
    const std::size_t reach = std::min(m, n);
    const double b = block_[p] + mirror_[p][reach - d];
    const double b_count = static_cast<double>(d * d + (reach - d));

    const double stat = 2.0 * b / b_count - wx / wx_count - wy / wy_count;
    return split_weight(n, m) * stat;
}

double SplitDivergence::complete_at(std::size_t v, std::size_t t, std::size_t u) const {
    const std::size_t W = length_ + 1;
    auto rect = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        return prefix_[r1 * W + c1] - prefix_[r0 * W + c1] - prefix_[r1 * W + c0] +
               prefix_[r0 * W + c0];
    };
    const std::size_t n = t - v;
    const std::size_t m = u - t;
    const double between = rect(v, t, t, u);
    const double within_x = 0.5 * rect(v, t, v, t);
    const double within_y = 0.5 * rect(t, u, t, u);
    const double stat = 2.0 * between / (static_cast<double>(n) * static_cast<double>(m)) -
                        within_x / pairs_of(n) - within_y / pairs_of(m);
    return split_weight(n, m) * stat;
}

} // namespace cp3o
