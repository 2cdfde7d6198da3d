#pragma once

#include <cstddef>
#include <vector>

#include "texdens/edge_map.hpp"
#include "texdens/sampler.hpp"

namespace texdens {

/// What counts as a crossing along a traced segment.
enum class CrossingMode {
    EdgePixels,  ///< every mask-true interior pixel
    Transitions, ///< maximal runs of mask-true interior pixels (each edge crossed once)
};

struct ExcessOptions {
    CrossingMode crossing = CrossingMode::EdgePixels;
};

/// Crossings along one segment.
///
/// `crossings` is the raw count of interior pixels that qualify. Each traced
/// pixel stands for `length / steps` of the segment, so the excess `w` is the
/// count scaled by that arc length; this keeps w <= length for every direction.
struct SegmentExcess {
    double length = 0.0;
    double w = 0.0;
    std::size_t crossings = 0;
};

struct ExcessResult {
    double total_length = 0.0; ///< L
    double total_excess = 0.0; ///< E_L
    double pe = 1.0;
    std::size_t n_points = 0;
    std::size_t n_pairs = 0;
};

/// Pixels on the segment a -> b, both endpoints included.
///
/// Integer Bresenham stepping along the major axis; the minor coordinate is
/// the exact line position rounded half-up in image coordinates, which makes
/// trace(a, b) == reverse(trace(b, a)).
std::vector<Point> trace_segment(Point a, Point b);

SegmentExcess segment_excess(const EdgeMap& edge_map, Point a, Point b, const ExcessOptions& options = {});

/// PE = 1 + E_L / L over all unordered pairs, or 1.0 when L == 0.
///
/// Points are sorted first and pairs are reduced in lexicographic order, so
/// the result is bit-identical for any permutation of the input and any thread
/// count. Pair evaluation runs under OpenMP.
ExcessResult graph_excess(const EdgeMap& edge_map, const PointSet& points, const ExcessOptions& options = {});

} // namespace texdens
