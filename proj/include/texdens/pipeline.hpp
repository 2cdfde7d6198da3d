#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "texdens/beta_stats.hpp"
#include "texdens/edge_map.hpp"
#include "texdens/excess_graph.hpp"
#include "texdens/image.hpp"
#include "texdens/roi_filter.hpp"

namespace texdens {

/// One line of an ROI track file.
struct RoiRecord {
    std::int64_t frame = 0;
    std::int64_t track_id = 0;
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    Roi roi() const noexcept { return {x, y, w, h, track_id, frame}; }
};

enum class Grouping { PerTrack, Global };

Grouping parse_grouping(std::string_view text);
const char* to_string(Grouping g) noexcept;

/// "cumulative" or "ema:<decay>" with decay in (0, 1].
Averaging parse_averaging(std::string_view text);
std::string to_string(const Averaging& a);

struct RunConfig {
    double t_grad = kDefaultGradientThreshold;
    std::size_t n_points = kDefaultPointCount;
    double t_pe = kDefaultPeThreshold;
    double beta_threshold = kDefaultBetaThreshold;
    std::size_t bins = kDefaultHistogramBins;
    std::uint64_t seed = 0;
    Grouping grouping = Grouping::PerTrack;
    Averaging averaging{};
    ExcessOptions excess{};
};

/// Throws Error(Range) when a field violates its bounds.
void validate(const RunConfig& config);

struct RoiAnalysis {
    ExcessResult excess;
    std::size_t edge_pixels = 0;
    std::uint64_t sample_seed = 0;
    bool no_edges = false; ///< fewer than two edge points were available
};

/// gradient -> threshold -> sample -> graph excess for one roi.
/// The sampling seed is derive_seed(config.seed, roi.frame, roi.id).
RoiAnalysis analyze_roi(const GrayImage& image, const Roi& roi, const RunConfig& config);

struct ReportRow {
    RoiRecord record;
    RoiAnalysis analysis;
    double running_mean = 1.0;
    bool kept = true;
};

/// Beta fit for one group of rows. Exactly one of params / error is set.
struct GroupFit {
    std::string group;              ///< "global" or "track:<id>"
    std::int64_t id = -1;           ///< track id, -1 for the global group
    std::size_t count = 0;
    std::optional<BetaParams> params;
    std::optional<TextureClass> texture;
    std::optional<std::string> error;
};

struct RunReport {
    std::vector<ReportRow> rows;
    std::vector<TrackState> tracks;
    std::vector<GroupFit> fits;
    Histogram histogram;
    std::vector<ScatterRow> scatter;
};

using FrameSet = std::map<std::int64_t, GrayImage>;

/// Frames indexed by their position.
FrameSet frames_from(std::vector<GrayImage> images);

/// Runs every record (rejected ones included), updates tracks in (frame,
/// track_id) order and fits Betas to the shifted PE of each group.
/// Throws Error(Ingestion) naming the first frame that is missing.
RunReport process_sequence(const FrameSet& frames, std::span<const RoiRecord> rois, const RunConfig& config);

/// ROI files: JSON Lines with keys frame, track_id, x, y, w, h, or CSV with
/// that header. Throws Error(Parse) with the 1-based line number.
std::vector<RoiRecord> parse_roi_jsonl(std::istream& in);
std::vector<RoiRecord> parse_roi_csv(std::istream& in);
/// Picks CSV for a ".csv" extension, JSON Lines otherwise.
std::vector<RoiRecord> read_roi_file(const std::filesystem::path& path);

/// Loads the frames referenced by `rois`. With a non-empty `frame_list` frame i
/// is frame_list[i]; otherwise `pattern` is a printf-style template such as
/// "seq/frame_%04d.pgm". Throws Error(Ingestion) naming a missing frame.
FrameSet load_frames(std::span<const RoiRecord> rois, std::span<const std::filesystem::path> frame_list,
                     const std::string& pattern);

} // namespace texdens
