#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "texdens/edge_map.hpp"

namespace texdens {

inline constexpr std::size_t kDefaultPointCount = 32;

struct PointSet {
    std::vector<Point> points;
    std::uint64_t seed = 0;
    std::size_t requested_n = 0;
};

/// Uniform sample without replacement from the mask-true pixels.
///
/// Candidates are enumerated in row-major order and the first n slots of a
/// partial Fisher-Yates shuffle are returned, in draw order. When the mask has
/// fewer than n pixels all of them are returned. Throws Error(Range) for n == 0.
PointSet sample_edge_points(const EdgeMap& edge_map, std::size_t n, std::uint64_t seed);

} // namespace texdens
