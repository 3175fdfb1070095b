#include <cp3o/eval.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cp3o {

namespace {

double choose2(std::size_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n == 0 ? 0 : n - 1);
}

} // namespace

RandScore adjusted_rand_score(const Segmentation& a, const Segmentation& b) {
    if (a.series_length != b.series_length) {
        std::ostringstream msg;
        msg << "segmentations cover different lengths: " << a.series_length << " vs "
            << b.series_length;
        throw std::invalid_argument(msg.str());
    }
    a.check();
    b.check();
    if (a.change_points == b.change_points) {
        return {1.0, 1.0};
    }

    // Segments are contiguous, so the contingency table is a merge of the two
    // boundary lists.
    const auto la = a.segment_lengths();
    const auto lb = b.segment_lengths();
    double index = 0.0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    std::size_t end_a = la[0];
    std::size_t end_b = lb[0];
    std::size_t pos = 0;
    while (pos < a.series_length) {
        const std::size_t next = std::min(end_a, end_b);
        index += choose2(next - pos);
        pos = next;
        if (pos == end_a && ++ia < la.size()) {
            end_a += la[ia];
        }
        if (pos == end_b && ++ib < lb.size()) {
            end_b += lb[ib];
        }
    }

    double sum_a = 0.0;
    for (auto n : la) {
        sum_a += choose2(n);
    }
    double sum_b = 0.0;
    for (auto n : lb) {
        sum_b += choose2(n);
    }
    const double expected = sum_a * sum_b / choose2(a.series_length);
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) {
        return {0.0, 0.0};
    }
    const double raw = (index - expected) / (max_index - expected);
    return {std::clamp(raw, 0.0, 1.0), raw};
}

} // namespace cp3o
