#include <cp3o/selection.hpp>

#include <cmath>
#include <stdexcept>

namespace cp3o {

std::size_t select_k(const GofCurve& curve, IncrementVariance variance) {
    const std::size_t K = curve.max_k();
    if (K < 3) {
        throw std::invalid_argument("selection needs a Gof curve of length at least 3");
    }
    std::vector<double> increments(K - 1);
    for (std::size_t k = 0; k + 1 < K; ++k) {
        increments[k] = curve.values[k + 1] - curve.values[k];
    }
    const double mean = (curve.values[K - 1] - curve.values[0]) / static_cast<double>(K - 1);
    double ss = 0.0;
    for (double inc : increments) {
        ss += (inc - mean) * (inc - mean);
    }
    const double denom = variance == IncrementVariance::unbiased ? static_cast<double>(K - 2)
                                                                  : static_cast<double>(K - 1);
    const double threshold = mean + 0.5 * std::sqrt(ss / denom);

    std::size_t prefix = 0;
    while (prefix < increments.size() && increments[prefix] > threshold) {
        ++prefix;
    }
    return 1 + prefix;
}

} // namespace cp3o
