#pragma once

#include <cstddef>
#include <vector>

namespace cp3o {

// Ghat(1), ..., Ghat(K); values[k-1] is Ghat(k).
struct GofCurve {
    std::vector<double> values;

    std::size_t max_k() const { return values.size(); }
    double at(std::size_t k) const { return values.at(k - 1); }
};

enum class IncrementVariance { unbiased, biased };

// 1 + length of the longest prefix of increments Ghat(k+1) - Ghat(k) that all
// exceed mean + sd/2 of the increments. Throws std::invalid_argument if K < 3.
std::size_t select_k(const GofCurve& curve,
                     IncrementVariance variance = IncrementVariance::unbiased);

} // namespace cp3o
