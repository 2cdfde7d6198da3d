#include "texdens/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <istream>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "texdens/error.hpp"
#include "texdens/image_io.hpp"
#include "texdens/rng.hpp"
#include "texdens/sampler.hpp"

namespace texdens {

Grouping parse_grouping(std::string_view text)
{
    if (text == "per_track" || text == "per-track") return Grouping::PerTrack;
    if (text == "global") return Grouping::Global;
    throw Error(ErrorKind::Range, "grouping must be 'per_track' or 'global', got '" + std::string(text) + "'");
}

const char* to_string(Grouping g) noexcept
{
    return g == Grouping::Global ? "global" : "per_track";
}

Averaging parse_averaging(std::string_view text)
{
    if (text == "cumulative")
        return Averaging::cumulative();
    if (text.starts_with("ema:")) {
        const std::string number(text.substr(4));
        std::size_t used = 0;
        double decay = 0.0;
        try {
            decay = std::stod(number, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == number.size() && used > 0 && decay > 0.0 && decay <= 1.0)
            return Averaging::exponential(decay);
    }
    throw Error(ErrorKind::Range, "averaging must be 'cumulative' or 'ema:<decay in (0,1]>', got '" +
                                      std::string(text) + "'");
}

std::string to_string(const Averaging& a)
{
    if (a.kind == Averaging::Kind::Cumulative)
        return "cumulative";
    std::ostringstream out;
    out << "ema:" << a.decay;
    return out.str();
}

void validate(const RunConfig& config)
{
    if (!(config.t_grad >= 0.0))
        throw Error(ErrorKind::Range, "t_grad must be non-negative");
    if (config.n_points < 2)
        throw Error(ErrorKind::Range, "n_points must be at least 2");
    if (!(config.t_pe > 0.0))
        throw Error(ErrorKind::Range, "t_pe must be positive");
    if (!(config.beta_threshold > 0.0))
        throw Error(ErrorKind::Range, "beta_threshold must be positive");
    if (config.bins < 1)
        throw Error(ErrorKind::Range, "bins must be at least 1");
    if (config.averaging.kind == Averaging::Kind::Exponential &&
        !(config.averaging.decay > 0.0 && config.averaging.decay <= 1.0))
        throw Error(ErrorKind::Range, "ema decay must lie in (0, 1]");
}

RoiAnalysis analyze_roi(const GrayImage& image, const Roi& roi, const RunConfig& config)
{
    const EdgeMap edges = threshold_edges(compute_gradient(image, roi), config.t_grad);
    RoiAnalysis out;
    out.edge_pixels = edges.edge_count();
    out.sample_seed = derive_seed(config.seed, roi.frame, roi.id);
    const PointSet points = sample_edge_points(edges, config.n_points, out.sample_seed);
    out.excess = graph_excess(edges, points, config.excess);
    out.no_edges = points.points.size() < 2;
    return out;
}

FrameSet frames_from(std::vector<GrayImage> images)
{
    FrameSet frames;
    for (std::size_t i = 0; i < images.size(); ++i)
        frames.emplace(static_cast<std::int64_t>(i), std::move(images[i]));
    return frames;
}

namespace {

GroupFit fit_group(std::string label, std::int64_t id, std::span<const double> pe, double beta_threshold)
{
    GroupFit fit;
    fit.group = std::move(label);
    fit.id = id;
    fit.count = pe.size();
    try {
        const std::vector<double> unit = shift_to_unit(pe);
        BetaParams params = fit_beta_mom(unit);
        params.support_shift = 1.0;
        fit.params = params;
        fit.texture = classify_texture(params, beta_threshold);
    } catch (const Error& e) {
        fit.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    return fit;
}

} // namespace

RunReport process_sequence(const FrameSet& frames, std::span<const RoiRecord> rois, const RunConfig& config)
{
    validate(config);

    std::vector<RoiRecord> ordered(rois.begin(), rois.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const RoiRecord& a, const RoiRecord& b) {
        return std::tie(a.frame, a.track_id) < std::tie(b.frame, b.track_id);
    });

    std::vector<const GrayImage*> images(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const auto it = frames.find(ordered[i].frame);
        if (it == frames.end())
            throw Error(ErrorKind::Ingestion, "frame " + std::to_string(ordered[i].frame) + " is missing");
        images[i] = &it->second;
    }

    RunReport report;
    report.rows.resize(ordered.size());

    std::vector<std::exception_ptr> failures(ordered.size());
    const auto count = static_cast<std::int64_t>(ordered.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            report.rows[i].record = ordered[i];
            report.rows[i].analysis = analyze_roi(*images[i], ordered[i].roi(), config);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (const auto& failure : failures)
        if (failure)
            std::rethrow_exception(failure);

    RoiFilter filter(config.t_pe, config.averaging);
    for (auto& row : report.rows) {
        const TrackState& state = filter.observe(row.record.track_id, row.analysis.excess.pe);
        row.running_mean = state.mean_pe;
        row.kept = state.kept;
    }
    for (const auto& [id, state] : filter.tracks())
        report.tracks.push_back(state);

    std::vector<double> all_pe;
    all_pe.reserve(report.rows.size());
    for (const auto& row : report.rows)
        all_pe.push_back(row.analysis.excess.pe);

    if (!report.rows.empty()) {
        if (config.grouping == Grouping::Global) {
            report.fits.push_back(fit_group("global", -1, all_pe, config.beta_threshold));
        } else {
            std::map<std::int64_t, std::vector<double>> groups;
            for (const auto& row : report.rows)
                groups[row.record.track_id].push_back(row.analysis.excess.pe);
            for (const auto& [id, values] : groups)
                report.fits.push_back(fit_group("track:" + std::to_string(id), id, values, config.beta_threshold));
        }
    }

    std::vector<IdentifiedFit> fitted;
    for (const auto& fit : report.fits)
        if (fit.params)
            fitted.push_back({fit.id, *fit.params});
    report.scatter = scatter_params(fitted, config.beta_threshold);
    report.histogram = build_histogram(all_pe, config.bins);
    return report;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what)
{
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line, std::string_view field)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    Int value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
        parse_fail(line, "field '" + std::string(field) + "' is not an integer: '" + std::string(text) + "'");
    return value;
}

bool blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

void check_record(const RoiRecord& r, std::size_t line)
{
    if (r.w < 3 || r.h < 3)
        parse_fail(line, "roi must be at least 3x3");
    if (r.x < 0 || r.y < 0)
        parse_fail(line, "roi offset must be non-negative");
    if (r.frame < 0)
        parse_fail(line, "frame index must be non-negative");
}

constexpr std::string_view kFields[] = {"frame", "track_id", "x", "y", "w", "h"};

} // namespace

std::vector<RoiRecord> parse_roi_jsonl(std::istream& in)
{
    std::vector<RoiRecord> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text))
            continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            parse_fail(line, std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object())
            parse_fail(line, "expected a JSON object");
        std::int64_t values[6];
        for (std::size_t k = 0; k < 6; ++k) {
            const auto it = doc.find(std::string(kFields[k]));
            if (it == doc.end())
                parse_fail(line, "missing field '" + std::string(kFields[k]) + "'");
            if (!it->is_number_integer())
                parse_fail(line, "field '" + std::string(kFields[k]) + "' is not an integer");
            values[k] = it->get<std::int64_t>();
        }
        for (std::size_t k = 2; k < 6; ++k)
            if (values[k] < -(1LL << 30) || values[k] > (1LL << 30))
                parse_fail(line, "field '" + std::string(kFields[k]) + "' is out of range");
        RoiRecord r{values[0],
                    values[1],
                    static_cast<int>(values[2]),
                    static_cast<int>(values[3]),
                    static_cast<int>(values[4]),
                    static_cast<int>(values[5])};
        check_record(r, line);
        out.push_back(r);
    }
    return out;
}

std::vector<RoiRecord> parse_roi_csv(std::istream& in)
{
    std::vector<RoiRecord> out;
    std::string text;
    std::size_t line = 0;
    int column[6] = {-1, -1, -1, -1, -1, -1};
    std::size_t n_columns = 0;
    bool have_header = false;

    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r')
            text.pop_back();
        if (blank(text))
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(text);
        for (std::string cell; std::getline(ss, cell, ',');)
            cells.push_back(cell);
        if (!text.empty() && text.back() == ',')
            cells.emplace_back();

        if (!have_header) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                std::string name = cells[c];
                std::erase_if(name, [](unsigned char ch) { return std::isspace(ch); });
                for (std::size_t k = 0; k < 6; ++k)
                    if (name == kFields[k])
                        column[k] = static_cast<int>(c);
            }
            for (std::size_t k = 0; k < 6; ++k)
                if (column[k] < 0)
                    parse_fail(line, "header lacks column '" + std::string(kFields[k]) + "'");
            n_columns = cells.size();
            have_header = true;
            continue;
        }
        if (cells.size() != n_columns)
            parse_fail(line, "expected " + std::to_string(n_columns) + " columns, got " + std::to_string(cells.size()));
        RoiRecord r;
        r.frame = parse_int<std::int64_t>(cells[column[0]], line, kFields[0]);
        r.track_id = parse_int<std::int64_t>(cells[column[1]], line, kFields[1]);
        r.x = parse_int<int>(cells[column[2]], line, kFields[2]);
        r.y = parse_int<int>(cells[column[3]], line, kFields[3]);
        r.w = parse_int<int>(cells[column[4]], line, kFields[4]);
        r.h = parse_int<int>(cells[column[5]], line, kFields[5]);
        check_record(r, line);
        out.push_back(r);
    }
    return out;
}

std::vector<RoiRecord> read_roi_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Ingestion, "cannot open roi file '" + path.string() + "'");
    try {
        return path.extension() == ".csv" ? parse_roi_csv(in) : parse_roi_jsonl(in);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

namespace {

// Expands the single %d / %0Nd conversion of a frame pattern; "%%" is a literal '%'.
std::string expand_pattern(const std::string& pattern, std::int64_t frame)
{
    std::string out;
    bool expanded = false;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != '%') {
            out += pattern[i];
            continue;
        }
        if (i + 1 < pattern.size() && pattern[i + 1] == '%') {
            out += '%';
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        bool zero = false;
        if (j < pattern.size() && pattern[j] == '0') {
            zero = true;
            ++j;
        }
        std::size_t width = 0;
        while (j < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[j])))
            width = width * 10 + static_cast<std::size_t>(pattern[j++] - '0');
        if (j >= pattern.size() || pattern[j] != 'd' || expanded || width > 32)
            throw Error(ErrorKind::Ingestion, "frame pattern '" + pattern + "' must contain exactly one %d conversion");
        std::string digits = std::to_string(frame);
        if (digits.size() < width)
            digits.insert(0, width - digits.size(), zero ? '0' : ' ');
        out += digits;
        expanded = true;
        i = j;
    }
    if (!expanded)
        throw Error(ErrorKind::Ingestion, "frame pattern '" + pattern + "' must contain exactly one %d conversion");
    return out;
}

} // namespace

FrameSet load_frames(std::span<const RoiRecord> rois, std::span<const std::filesystem::path> frame_list,
                     const std::string& pattern)
{
    std::set<std::int64_t> needed;
    for (const auto& r : rois)
        needed.insert(r.frame);

    FrameSet frames;
    for (const std::int64_t frame : needed) {
        std::filesystem::path path;
        if (!frame_list.empty()) {
            if (frame < 0 || static_cast<std::uint64_t>(frame) >= frame_list.size())
                throw Error(ErrorKind::Ingestion, "frame " + std::to_string(frame) + " has no entry in the frame list");
            path = frame_list[static_cast<std::size_t>(frame)];
        } else {
            path = expand_pattern(pattern, frame);
        }
        try {
            frames.emplace(frame, read_pnm(path));
        } catch (const Error& e) {
            throw Error(ErrorKind::Ingestion, "frame " + std::to_string(frame) + ": " + e.what());
        }
    }
    return frames;
}

} // namespace texdens
