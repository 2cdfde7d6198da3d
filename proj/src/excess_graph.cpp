#include "texdens/excess_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "texdens/error.hpp"

namespace texdens {

namespace {

// Visits the pixels of a -> b in order. The minor coordinate is the exact
// line position rounded half-up, tracked with an integer error term.
template <typename Visit>
void walk_segment(Point a, Point b, Visit&& visit)
{
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    const bool x_major = std::abs(dx) >= std::abs(dy);
    const std::int64_t major_len = x_major ? std::abs(dx) : std::abs(dy);
    const std::int64_t minor_len = x_major ? std::abs(dy) : std::abs(dx);
    const int major_dir = (x_major ? dx : dy) < 0 ? -1 : 1;
    const int minor_dir = (x_major ? dy : dx) < 0 ? -1 : 1;

    std::int64_t err = 0;
    int major = 0;
    int minor = 0;
    for (std::int64_t t = 0; t <= major_len; ++t) {
        if (t > 0) {
            major += major_dir;
            err += 2 * minor_len;
            // A tie is exactly err == major_len; it rounds toward +inf.
            if (minor_dir > 0 ? err >= major_len : err > major_len) {
                minor += minor_dir;
                err -= 2 * major_len;
            }
        }
        visit(x_major ? Point{a.x + major, a.y + minor} : Point{a.x + minor, a.y + major});
    }
}

SegmentExcess excess_unchecked(const EdgeMap& edge_map, Point a, Point b, CrossingMode mode)
{
    if (a == b)
        return {};

    const auto dx = static_cast<std::int64_t>(b.x) - a.x;
    const auto dy = static_cast<std::int64_t>(b.y) - a.y;
    const auto steps = std::max(std::llabs(dx), std::llabs(dy));

    std::size_t crossings = 0;
    std::int64_t index = 0;
    bool previous_on = false;
    walk_segment(a, b, [&](Point p) {
        const bool interior = index > 0 && index < steps;
        ++index;
        if (!interior)
            return;
        const bool on = edge_map.edge(p);
        if (mode == CrossingMode::EdgePixels)
            crossings += on ? 1 : 0;
        else if (on && !previous_on)
            ++crossings;
        previous_on = on;
    });

    SegmentExcess out;
    out.length = std::sqrt(static_cast<double>(dx * dx + dy * dy));
    out.crossings = crossings;
    out.w = std::min(out.length, static_cast<double>(crossings) * out.length / static_cast<double>(steps));
    return out;
}

void require_inside(const EdgeMap& edge_map, Point p)
{
    if (!edge_map.contains(p))
        throw Error(ErrorKind::Range, "point (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                          ") is outside the edge map");
}

} // namespace

std::vector<Point> trace_segment(Point a, Point b)
{
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(std::max(std::abs(b.x - a.x), std::abs(b.y - a.y))) + 1);
    walk_segment(a, b, [&](Point p) { out.push_back(p); });
    return out;
}

SegmentExcess segment_excess(const EdgeMap& edge_map, Point a, Point b, const ExcessOptions& options)
{
    require_inside(edge_map, a);
    require_inside(edge_map, b);
    return excess_unchecked(edge_map, a, b, options.crossing);
}

ExcessResult graph_excess(const EdgeMap& edge_map, const PointSet& points, const ExcessOptions& options)
{
    std::vector<Point> sorted = points.points;
    for (const Point& p : sorted)
        require_inside(edge_map, p);
    std::sort(sorted.begin(), sorted.end());

    const auto n = static_cast<std::int64_t>(sorted.size());
    ExcessResult result;
    result.n_points = sorted.size();
    result.n_pairs = n < 2 ? 0 : static_cast<std::size_t>(n * (n - 1) / 2);
    if (n < 2)
        return result;

    std::vector<double> lengths(result.n_pairs);
    std::vector<double> excess(result.n_pairs);

#pragma omp parallel for schedule(dynamic, 4) if (result.n_pairs > 2048)
    for (std::int64_t i = 0; i < n - 1; ++i) {
        auto k = static_cast<std::size_t>(i * n - i * (i + 1) / 2);
        for (std::int64_t j = i + 1; j < n; ++j, ++k) {
            const SegmentExcess s = excess_unchecked(edge_map, sorted[i], sorted[j], options.crossing);
            lengths[k] = s.length;
            excess[k] = s.w;
        }
    }

    // Reduce in pair order so the sums do not depend on scheduling.
    for (std::size_t k = 0; k < result.n_pairs; ++k) {
        result.total_length += lengths[k];
        result.total_excess += excess[k];
    }
    if (result.total_length > 0.0)
        result.pe = 1.0 + result.total_excess / result.total_length;
    return result;
}

} // namespace texdens
