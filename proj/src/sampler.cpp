#include "texdens/sampler.hpp"

#include <utility>

#include "texdens/error.hpp"
#include "texdens/rng.hpp"

namespace texdens {

PointSet sample_edge_points(const EdgeMap& edge_map, std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw Error(ErrorKind::Range, "point count must be at least 1");

    std::vector<Point> candidates;
    candidates.reserve(edge_map.edge_count());
    for (int y = 0; y < edge_map.height(); ++y)
        for (int x = 0; x < edge_map.width(); ++x)
            if (edge_map.edge(x, y))
                candidates.push_back({x, y});

    const std::size_t take = std::min(n, candidates.size());
    Xoshiro256 rng(seed);
    for (std::size_t i = 0; i < take; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(take);
    return {std::move(candidates), seed, n};
}

} // namespace texdens
