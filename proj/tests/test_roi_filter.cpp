#include "doctest.h"

#include <numeric>
#include <vector>

#include "texdens/error.hpp"
#include "texdens/rng.hpp"
#include "texdens/roi_filter.hpp"

using namespace texdens;

TEST_CASE("recursive average updates")
{
    const TrackState first = update_track(std::nullopt, 7, 1.4);
    CHECK(first.track_id == 7);
    CHECK(first.mean_pe == 1.4);
    CHECK(first.count == 1);
    CHECK(first.kept);

    const TrackState second = update_track(first, 7, 1.6);
    CHECK(second.mean_pe == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(second.count == 2);

    CHECK_THROWS_AS(update_track(first, 7, 2.5), Error);
    CHECK_THROWS_AS(update_track(first, 7, 0.5), Error);
}

TEST_CASE("running mean equals the batch mean, in any order")
{
    Xoshiro256 rng(12);
    std::vector<double> values(1000);
    for (auto& v : values)
        v = 1.0 + rng.uniform();
    const double batch = std::accumulate(values.begin(), values.end(), 0.0) / values.size();

    for (int round = 0; round < 3; ++round) {
        std::optional<TrackState> state;
        for (double v : values)
            state = update_track(state, 1, v);
        CHECK(std::abs(state->mean_pe - batch) <= 1e-12);
        CHECK(state->count == 1000);
        for (std::size_t i = values.size(); i > 1; --i)
            std::swap(values[i - 1], values[rng.below(i)]);
    }
}

TEST_CASE("keep rule is strict")
{
    CHECK(keep_roi({1, 1.3, 1, true}, 1.9));
    CHECK_FALSE(keep_roi({1, 1.95, 1, true}, 1.9));
    CHECK_FALSE(keep_roi({1, 1.9, 1, true}, 1.9));
}

TEST_CASE("constant streams settle on their verdict from the first frame")
{
    for (double c : {1.2, 1.89, 1.9, 1.95}) {
        std::optional<TrackState> state;
        for (int i = 0; i < 50; ++i) {
            state = update_track(state, 3, c, 1.9);
            CHECK(state->mean_pe == doctest::Approx(c).epsilon(1e-15));
            CHECK(state->kept == (c < 1.9));
        }
    }
}

TEST_CASE("exponential averaging")
{
    const auto ema = Averaging::exponential(0.5);
    TrackState s = update_track(std::nullopt, 1, 1.0, 1.9, ema);
    s = update_track(s, 1, 2.0, 1.9, ema);
    CHECK(s.mean_pe == doctest::Approx(1.5));
    s = update_track(s, 1, 2.0, 1.9, ema);
    CHECK(s.mean_pe == doctest::Approx(1.75));
    CHECK(s.count == 3);
}

TEST_CASE("tracks are independent")
{
    RoiFilter filter(1.9);
    filter.observe(1, 1.2);
    filter.observe(2, 1.95);
    filter.observe(1, 1.4);
    CHECK(filter.find(1)->mean_pe == doctest::Approx(1.3));
    CHECK(filter.find(1)->kept);
    CHECK(filter.find(2)->mean_pe == 1.95);
    CHECK_FALSE(filter.find(2)->kept);
    CHECK(filter.find(3) == nullptr);
    CHECK(filter.tracks().size() == 2);
}
