#include "texdens/roi_filter.hpp"

#include <string>

#include "texdens/error.hpp"

namespace texdens {

TrackState update_track(const std::optional<TrackState>& state, std::int64_t track_id, double pe, double t_pe,
                        const Averaging& averaging)
{
    if (!(pe >= 1.0 && pe <= 2.0))
        throw Error(ErrorKind::Range, "edge excess value " + std::to_string(pe) + " is outside [1, 2]");

    TrackState next;
    if (!state || state->count == 0) {
        next.track_id = state ? state->track_id : track_id;
        next.mean_pe = pe;
        next.count = 1;
    } else {
        next = *state;
        next.count += 1;
        if (averaging.kind == Averaging::Kind::Cumulative)
            next.mean_pe += (pe - next.mean_pe) / static_cast<double>(next.count);
        else
            next.mean_pe += (pe - next.mean_pe) * averaging.decay;
    }
    next.kept = keep_roi(next, t_pe);
    return next;
}

bool keep_roi(const TrackState& state, double t_pe) noexcept
{
    return state.mean_pe < t_pe;
}

const TrackState& RoiFilter::observe(std::int64_t track_id, double pe)
{
    const auto it = tracks_.find(track_id);
    std::optional<TrackState> previous;
    if (it != tracks_.end())
        previous = it->second;
    TrackState next = update_track(previous, track_id, pe, t_pe_, averaging_);
    return tracks_.insert_or_assign(track_id, next).first->second;
}

const TrackState* RoiFilter::find(std::int64_t track_id) const
{
    const auto it = tracks_.find(track_id);
    return it == tracks_.end() ? nullptr : &it->second;
}

} // namespace texdens
