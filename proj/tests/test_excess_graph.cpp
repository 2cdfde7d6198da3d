#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "texdens/error.hpp"
#include "texdens/excess_graph.hpp"
#include "texdens/reference.hpp"
#include "texdens/synth.hpp"

using namespace texdens;

namespace {

EdgeMap filled(int width, int height, bool on)
{
    return EdgeMap::from_mask(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, on));
}

EdgeMap bernoulli(int size, double p, std::uint64_t seed)
{
    return gen_mask({SynthKind::Bernoulli, size, size, p, 8, 200, 48.0, seed});
}

std::vector<Point> random_points(Xoshiro256& rng, int width, int height, std::size_t n)
{
    std::vector<Point> points(n);
    for (auto& p : points)
        p = {static_cast<int>(rng.below(width)), static_cast<int>(rng.below(height))};
    return points;
}

} // namespace

TEST_CASE("trace: axis aligned and diagonal")
{
    CHECK(trace_segment({0, 0}, {3, 0}) == std::vector<Point>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK(trace_segment({0, 0}, {2, 2}) == std::vector<Point>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(trace_segment({4, 4}, {4, 4}) == std::vector<Point>{{4, 4}});
    CHECK(trace_segment({0, 3}, {0, 0}) == std::vector<Point>{{0, 3}, {0, 2}, {0, 1}, {0, 0}});
}

TEST_CASE("trace: shallow slope matches the DDA oracle")
{
    const auto t = trace_segment({0, 0}, {5, 2});
    CHECK(t.size() == 6);
    CHECK(t == oracle::dda_trace({0, 0}, {5, 2}));
    CHECK(t == std::vector<Point>{{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 2}, {5, 2}});
}

TEST_CASE("trace: equals DDA and is reversal symmetric for every direction")
{
    for (int dx = -9; dx <= 9; ++dx) {
        for (int dy = -9; dy <= 9; ++dy) {
            const Point a{10, 10};
            const Point b{10 + dx, 10 + dy};
            const auto forward = trace_segment(a, b);
            auto backward = trace_segment(b, a);
            std::reverse(backward.begin(), backward.end());
            CHECK(forward == oracle::dda_trace(a, b));
            CHECK(forward == backward);
            CHECK(forward.size() == static_cast<std::size_t>(std::max(std::abs(dx), std::abs(dy))) + 1);
        }
    }
}

TEST_CASE("segment excess examples")
{
    SUBCASE("blank mask")
    {
        const auto s = segment_excess(filled(10, 1, false), {0, 0}, {9, 0});
        CHECK(s.length == 9.0);
        CHECK(s.w == 0.0);
    }
    SUBCASE("all-true mask counts the 8 interior pixels")
    {
        const auto s = segment_excess(filled(10, 1, true), {0, 0}, {9, 0});
        CHECK(s.length == 9.0);
        CHECK(s.crossings == 8);
        CHECK(s.w == 8.0);
    }
    SUBCASE("coincident points")
    {
        const auto s = segment_excess(filled(5, 5, true), {2, 2}, {2, 2});
        CHECK(s.length == 0.0);
        CHECK(s.w == 0.0);
    }
    SUBCASE("diagonal interior pixels are weighted by their arc length")
    {
        // (0,0)->(4,4): 3 interior pixels, each sqrt(2) long.
        const auto s = segment_excess(filled(5, 5, true), {0, 0}, {4, 4});
        CHECK(s.crossings == 3);
        CHECK(s.w == doctest::Approx(3.0 * std::sqrt(2.0)));
        CHECK(s.w <= s.length);
    }
    SUBCASE("points outside the map are rejected")
    {
        CHECK_THROWS_AS(segment_excess(filled(5, 5, true), {0, 0}, {5, 0}), Error);
    }
}

TEST_CASE("transition counting counts each run of edge pixels once")
{
    // on off on on off on, endpoints excluded -> interior 1..4 = off on on off
    const EdgeMap map = EdgeMap::from_mask(6, 1, {1, 0, 1, 1, 0, 1});
    ExcessOptions transitions{CrossingMode::Transitions};
    CHECK(segment_excess(map, {0, 0}, {5, 0}, transitions).crossings == 1);
    CHECK(segment_excess(map, {0, 0}, {5, 0}).crossings == 2);
    const EdgeMap alternating = EdgeMap::from_mask(7, 1, {1, 1, 0, 1, 0, 1, 1});
    CHECK(segment_excess(alternating, {0, 0}, {6, 0}, transitions).crossings == 3);
    CHECK(segment_excess(alternating, {6, 0}, {0, 0}, transitions).crossings == 3);
}

TEST_CASE("segment excess agrees with the brute-force walk on random masks")
{
    Xoshiro256 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const EdgeMap map = bernoulli(24, rng.uniform(), rng());
        const auto pts = random_points(rng, 24, 24, 2);
        const auto s = segment_excess(map, pts[0], pts[1]);
        const auto ref = oracle::brute_segment(map.mask(), 24, pts[0], pts[1]);
        CHECK(s.crossings == ref.crossings);
        CHECK(s.length == doctest::Approx(ref.length).epsilon(1e-15));
        CHECK(s.w == doctest::Approx(ref.w).epsilon(1e-14));
        const auto back = segment_excess(map, pts[1], pts[0]);
        CHECK(back.w == s.w);
        CHECK(back.length == s.length);
    }
}

TEST_CASE("graph excess degenerate inputs give 1.0")
{
    const EdgeMap map = filled(20, 20, true);
    CHECK(graph_excess(map, {}).pe == 1.0);
    CHECK(graph_excess(map, {{{3, 3}}}).pe == 1.0);
    const auto blank = graph_excess(filled(20, 20, false), {{{0, 0}, {19, 4}, {7, 13}, {2, 18}}});
    CHECK(blank.pe == 1.0);
    CHECK(blank.total_excess == 0.0);
    CHECK(blank.n_pairs == 6);
    const auto same = graph_excess(map, {{{5, 5}, {5, 5}}});
    CHECK(same.pe == 1.0);
}

TEST_CASE("graph excess on a Bernoulli(0.5) mask is close to 1.5")
{
    const EdgeMap map = bernoulli(200, 0.5, 77);
    const PointSet points = sample_edge_points(map, 32, 5);
    const auto r = graph_excess(map, points);
    CHECK(r.n_pairs == 496);
    CHECK(std::abs(r.pe - 1.5) <= 0.05);
    CHECK(r.pe == doctest::Approx(oracle::brute_pe(map, points.points)).epsilon(1e-12));
}

TEST_CASE("parallel and serial kernels agree bit for bit")
{
    Xoshiro256 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const EdgeMap map = bernoulli(128, rng.uniform(), rng());
        const PointSet points = sample_edge_points(map, 120, rng());
        const auto fast = graph_excess(map, points);
        const auto slow = reference::graph_excess(map, points);
        CHECK(fast.total_length == slow.total_length);
        CHECK(fast.total_excess == slow.total_excess);
        CHECK(fast.pe == slow.pe);
        CHECK(fast.n_pairs == slow.n_pairs);
    }
}

TEST_CASE("properties: range, permutation invariance, symmetry, mask monotonicity")
{
    Xoshiro256 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const int size = 8 + static_cast<int>(rng.below(40));
        EdgeMap map = bernoulli(size, rng.uniform(), rng());
        PointSet points{random_points(rng, size, size, 2 + rng.below(20)), 0, 0};

        const auto base = graph_excess(map, points);
        CHECK(base.pe >= 1.0);
        CHECK(base.pe <= 2.0);

        PointSet shuffled = points;
        for (std::size_t i = shuffled.points.size(); i > 1; --i)
            std::swap(shuffled.points[i - 1], shuffled.points[rng.below(i)]);
        const auto permuted = graph_excess(map, shuffled);
        CHECK(permuted.pe == base.pe);
        CHECK(permuted.total_length == base.total_length);
        CHECK(permuted.total_excess == base.total_excess);

        for (int k = 0; k < 10; ++k)
            map.set_edge({static_cast<int>(rng.below(size)), static_cast<int>(rng.below(size))});
        CHECK(graph_excess(map, points).pe >= base.pe);
    }
}
