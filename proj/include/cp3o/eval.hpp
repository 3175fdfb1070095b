#pragma once

#include <cp3o/core.hpp>

namespace cp3o {

struct RandScore {
    // Clamped to [0, 1].
    double value = 0.0;
    double raw = 0.0;
};

// Adjusted Rand index between the partitions of {1..T} induced by two
// segmentations. Throws std::invalid_argument if their lengths differ.
RandScore adjusted_rand_score(const Segmentation& a, const Segmentation& b);

inline double adjusted_rand(const Segmentation& a, const Segmentation& b) {
    return adjusted_rand_score(a, b).value;
}

} // namespace cp3o
