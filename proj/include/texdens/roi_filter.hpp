#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace texdens {

inline constexpr double kDefaultPeThreshold = 1.9;

/// How the per-track expectation of PE is maintained.
struct Averaging {
    enum class Kind { Cumulative, Exponential };

    Kind kind = Kind::Cumulative;
    double decay = 0.1; ///< weight of the newest value when kind == Exponential

    static Averaging cumulative() noexcept { return {}; }
    static Averaging exponential(double decay) noexcept { return {Kind::Exponential, decay}; }
};

struct TrackState {
    std::int64_t track_id = 0;
    double mean_pe = 1.0;
    std::uint64_t count = 0;
    bool kept = true;
};

/// Running mean m_i = m_{i-1} + (pe - m_{i-1}) / i (or the exponential variant).
/// `kept` is refreshed against t_pe. Throws Error(Range) unless pe is in [1, 2].
TrackState update_track(const std::optional<TrackState>& state, std::int64_t track_id, double pe,
                        double t_pe = kDefaultPeThreshold, const Averaging& averaging = {});

/// True iff mean_pe < t_pe.
bool keep_roi(const TrackState& state, double t_pe = kDefaultPeThreshold) noexcept;

/// Independent track states keyed by id.
class RoiFilter {
public:
    explicit RoiFilter(double t_pe = kDefaultPeThreshold, Averaging averaging = {})
        : t_pe_(t_pe), averaging_(averaging)
    {
    }

    const TrackState& observe(std::int64_t track_id, double pe);

    const TrackState* find(std::int64_t track_id) const;
    const std::map<std::int64_t, TrackState>& tracks() const noexcept { return tracks_; }

private:
    double t_pe_;
    Averaging averaging_;
    std::map<std::int64_t, TrackState> tracks_;
};

} // namespace texdens
