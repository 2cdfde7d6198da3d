#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "texdens/error.hpp"
#include "texdens/pipeline.hpp"
#include "texdens/report.hpp"
#include "texdens/synth.hpp"

using namespace texdens;

namespace {

GrayImage noise(int w, int h, double p, std::uint64_t seed)
{
    SynthSpec s;
    s.kind = SynthKind::Bernoulli;
    s.width = w;
    s.height = h;
    s.density = p;
    s.seed = seed;
    return gen_image(s);
}

// 420x220 frame: blank on the left half, p=0.95 noise on the right half.
GrayImage two_region_frame(std::uint64_t seed)
{
    GrayImage frame(420, 220, 128);
    paste(frame, noise(200, 200, 0.95, seed), 210, 10);
    return frame;
}

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Range;
}

} // namespace

TEST_CASE("analyze: blank image")
{
    const GrayImage image(64, 64, 90);
    const RoiAnalysis a = analyze_roi(image, {4, 4, 40, 40, 1, 0}, RunConfig{});
    CHECK(a.excess.pe == 1.0);
    CHECK(a.no_edges);
    CHECK(a.edge_pixels == 0);
}

TEST_CASE("analyze: calibrated p = 0.5 noise gives pe near 1.5")
{
    const GrayImage image = noise(200, 200, 0.5, 3);
    RunConfig config;
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        config.seed = seed;
        const RoiAnalysis a = analyze_roi(image, {0, 0, 200, 200, 1, 0}, config);
        CHECK(std::abs(a.excess.pe - 1.5) <= 0.05);
        CHECK(a.excess.n_points == 32);
        sum += a.excess.pe;
    }
    CHECK(std::abs(sum / 10 - 1.5) <= 0.05);
}

TEST_CASE("analyze: step edge is reproducible")
{
    SynthSpec s;
    s.kind = SynthKind::Step;
    s.width = 80;
    s.height = 60;
    const GrayImage image = gen_image(s);
    RunConfig config;
    config.seed = 17;
    const Roi roi{10, 5, 60, 50, 3, 2};
    const auto a = analyze_roi(image, roi, config);
    const auto b = analyze_roi(image, roi, config);
    CHECK(a.excess.pe == b.excess.pe);
    CHECK(a.excess.total_length == b.excess.total_length);
    CHECK(a.sample_seed == b.sample_seed);
    CHECK(a.edge_pixels == 2 * 48);
}

TEST_CASE("analyze: degenerate roi propagates")
{
    const GrayImage image(20, 20, 0);
    CHECK(kind_of([&] { analyze_roi(image, {18, 0, 5, 5}, RunConfig{}); }) == ErrorKind::DegenerateRoi);
}

TEST_CASE("sequence: empty roi list")
{
    const RunReport r = process_sequence({}, {}, RunConfig{});
    CHECK(r.rows.empty());
    CHECK(r.fits.empty());
    CHECK(r.scatter.empty());
    CHECK(r.histogram.total() == 0);
}

TEST_CASE("sequence: blank track kept, textured track rejected")
{
    std::vector<GrayImage> images;
    std::vector<RoiRecord> rois;
    for (int f = 0; f < 6; ++f) {
        images.push_back(two_region_frame(100 + f));
        rois.push_back({f, 2, 215, 15, 190, 190});
        rois.push_back({f, 1, 10, 10, 190, 190});
    }
    const FrameSet frames = frames_from(std::move(images));
    const RunReport r = process_sequence(frames, rois, RunConfig{});

    REQUIRE(r.rows.size() == rois.size());
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        const auto& a = r.rows[i - 1].record;
        const auto& b = r.rows[i].record;
        CHECK(std::tie(a.frame, a.track_id) < std::tie(b.frame, b.track_id));
    }
    for (const auto& row : r.rows) {
        if (row.record.track_id == 1) {
            CHECK(row.analysis.excess.pe == 1.0);
            CHECK(row.kept);
        } else {
            CHECK(row.analysis.excess.pe > 1.9);
            CHECK_FALSE(row.kept);
        }
    }
    REQUIRE(r.tracks.size() == 2);
    CHECK(r.tracks[0].kept);
    CHECK_FALSE(r.tracks[1].kept);
    CHECK(r.tracks[1].count == 6);

    // Track 1 is all 1.0 so its fit is impossible; track 2 fits.
    REQUIRE(r.fits.size() == 2);
    CHECK(r.fits[0].error.has_value());
    CHECK_FALSE(r.fits[0].params.has_value());
    REQUIRE(r.fits[1].params.has_value());
    CHECK(r.fits[1].params->support_shift == 1.0);
    CHECK(r.scatter.size() == 1);
    CHECK(r.histogram.total() == rois.size());
}

TEST_CASE("sequence: group fits use exactly the shifted pe of their rows")
{
    std::vector<GrayImage> images;
    std::vector<RoiRecord> rois;
    for (int f = 0; f < 5; ++f) {
        images.push_back(noise(120, 120, 0.2 + 0.1 * f, 40 + f));
        rois.push_back({f, 1, 0, 0, 60, 120});
        rois.push_back({f, 2, 60, 0, 60, 120});
    }
    const FrameSet frames = frames_from(std::move(images));

    for (const Grouping g : {Grouping::Global, Grouping::PerTrack}) {
        RunConfig config;
        config.grouping = g;
        const RunReport r = process_sequence(frames, rois, config);
        for (const auto& fit : r.fits) {
            std::vector<double> pe;
            for (const auto& row : r.rows)
                if (fit.id < 0 || row.record.track_id == fit.id)
                    pe.push_back(row.analysis.excess.pe);
            CHECK(fit.count == pe.size());
            REQUIRE(fit.params.has_value());
            const BetaParams expected = fit_beta_mom(shift_to_unit(pe));
            CHECK(fit.params->alpha == expected.alpha);
            CHECK(fit.params->beta == expected.beta);
        }
        CHECK(r.fits.size() == (g == Grouping::Global ? 1u : 2u));
    }
}

TEST_CASE("sequence: input order does not matter")
{
    std::vector<GrayImage> images;
    std::vector<RoiRecord> rois;
    for (int f = 0; f < 3; ++f) {
        images.push_back(noise(90, 90, 0.4, 7 + f));
        for (int t = 0; t < 4; ++t)
            rois.push_back({f, t, 10 * t, 5, 40, 60});
    }
    const FrameSet frames = frames_from(std::move(images));
    const RunConfig config;
    std::ostringstream a, b;
    write_report_json(a, process_sequence(frames, rois, config), config);
    std::reverse(rois.begin(), rois.end());
    write_report_json(b, process_sequence(frames, rois, config), config);
    CHECK(a.str() == b.str());
}

TEST_CASE("sequence: missing frame is named")
{
    const FrameSet frames = frames_from({GrayImage(32, 32, 0)});
    const std::vector<RoiRecord> rois{{0, 1, 0, 0, 10, 10}, {3, 1, 0, 0, 10, 10}};
    try {
        process_sequence(frames, rois, RunConfig{});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Ingestion);
        CHECK(std::string(e.what()).find("frame 3") != std::string::npos);
    }
}

TEST_CASE("config validation and parsing")
{
    RunConfig c;
    c.n_points = 1;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.t_pe = 0;
    CHECK_THROWS_AS(validate(c), Error);
    CHECK(parse_grouping("global") == Grouping::Global);
    CHECK(parse_grouping("per_track") == Grouping::PerTrack);
    CHECK_THROWS_AS(parse_grouping("frame"), Error);
    CHECK(parse_averaging("cumulative").kind == Averaging::Kind::Cumulative);
    const Averaging ema = parse_averaging("ema:0.25");
    CHECK(ema.kind == Averaging::Kind::Exponential);
    CHECK(ema.decay == 0.25);
    CHECK(to_string(ema) == "ema:0.25");
    CHECK_THROWS_AS(parse_averaging("ema:0"), Error);
    CHECK_THROWS_AS(parse_averaging("ema:1.5"), Error);
    CHECK_THROWS_AS(parse_averaging("ema:x"), Error);
}

TEST_CASE("roi files: JSON Lines")
{
    std::istringstream in(R"({"frame": 0, "track_id": 5, "x": 1, "y": 2, "w": 10, "h": 12}

{"frame": 1, "track_id": 5, "x": 3, "y": 2, "w": 10, "h": 12, "score": 0.9}
)");
    const auto rois = parse_roi_jsonl(in);
    REQUIRE(rois.size() == 2);
    CHECK(rois[1].frame == 1);
    CHECK(rois[1].x == 3);
    CHECK(rois[0].h == 12);

    const auto line_of = [](const std::string& text) {
        std::istringstream bad(text);
        try {
            parse_roi_jsonl(bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string ok = R"({"frame": 0, "track_id": 1, "x": 0, "y": 0, "w": 5, "h": 5})";
    CHECK(line_of(ok + "\n" + ok + "\n{oops\n").starts_with("line 3:"));
    CHECK(line_of(ok + "\n" + R"({"frame": 0, "track_id": 1, "x": 0, "y": 0, "w": 5})").starts_with("line 2:"));
    CHECK(line_of(R"({"frame": 0, "track_id": 1, "x": 0.5, "y": 0, "w": 5, "h": 5})").starts_with("line 1:"));
    CHECK(line_of(R"({"frame": 0, "track_id": 1, "x": 0, "y": 0, "w": 2, "h": 5})").starts_with("line 1:"));
    CHECK(line_of("[1,2,3]").starts_with("line 1:"));
}

TEST_CASE("roi files: CSV")
{
    std::istringstream in("track_id,frame,x,y,w,h\r\n4,0,1,1,8,8\r\n4,1,2,1,8,8\r\n");
    const auto rois = parse_roi_csv(in);
    REQUIRE(rois.size() == 2);
    CHECK(rois[0].track_id == 4);
    CHECK(rois[1].frame == 1);
    CHECK(rois[1].x == 2);

    std::istringstream bad("frame,track_id,x,y,w,h\n0,1,1,1,8,8\n0,1,x,1,8,8\n");
    try {
        parse_roi_csv(bad);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).starts_with("line 3:"));
    }
    std::istringstream no_header("frame,x,y,w,h\n");
    CHECK_THROWS_AS(parse_roi_csv(no_header), Error);
    std::istringstream short_row("frame,track_id,x,y,w,h\n0,1,1,1,8\n");
    CHECK_THROWS_AS(parse_roi_csv(short_row), Error);
}

TEST_CASE("report: json round trip of the plottable parts")
{
    std::vector<GrayImage> images;
    std::vector<RoiRecord> rois;
    for (int f = 0; f < 4; ++f) {
        images.push_back(noise(100, 100, 0.3 + 0.15 * f, f));
        rois.push_back({f, 9, 0, 0, 100, 100});
    }
    RunConfig config;
    config.bins = 8;
    const RunReport r = process_sequence(frames_from(std::move(images)), rois, config);
    const auto doc = report_to_json(r, config);
    CHECK(doc.at("rows").size() == 4);
    CHECK(doc.at("config").at("bins") == 8);
    const ReportSummary s = summary_from_json(doc);
    CHECK(s.histogram.counts == r.histogram.counts);
    CHECK(s.histogram.bin_edges == r.histogram.bin_edges);
    REQUIRE(s.scatter.size() == r.scatter.size());
    CHECK(s.fits.size() == r.fits.size());
    CHECK_THROWS_AS(summary_from_json(nlohmann::json::object()), Error);

    std::ostringstream csv;
    write_rows_csv(csv, r);
    const std::string text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
