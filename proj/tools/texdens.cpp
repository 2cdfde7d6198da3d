// texdens: edge-excess texture density from the command line.
//
//   texdens analyze --image frame.pgm --roi 10,20,64,48
//   texdens run     --rois tracks.jsonl --frame-pattern seq/f_%04d.pgm --out report.json
//   texdens fit     --input pe.csv
//   texdens synth   --kind bernoulli --density 0.5 --out noise.pgm
//   texdens plot    --report report.json --out report.svg
//
// Exit status: 0 success, 1 bad input, 2 statistics have no solution.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "texdens/beta_stats.hpp"
#include "texdens/error.hpp"
#include "texdens/image_io.hpp"
#include "texdens/pipeline.hpp"
#include "texdens/report.hpp"
#include "texdens/svg.hpp"
#include "texdens/synth.hpp"

using namespace texdens;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitStatistics = 2;

struct ConfigFlags {
    RunConfig config;
    std::string grouping = "per_track";
    std::string averaging = "cumulative";
    std::string crossing = "edge_pixels";

    void add_to(CLI::App& app)
    {
        app.add_option("--t-grad", config.t_grad, "Gradient magnitude threshold")->capture_default_str();
        app.add_option("--n-points", config.n_points, "Edge points sampled per roi")->capture_default_str();
        app.add_option("--t-pe", config.t_pe, "Reject tracks whose mean PE reaches this")->capture_default_str();
        app.add_option("--beta-threshold", config.beta_threshold, "Beta below this is high texture")
            ->capture_default_str();
        app.add_option("--bins", config.bins, "Histogram bins over [1, 2]")->capture_default_str();
        app.add_option("--seed", config.seed, "Global sampling seed")->capture_default_str();
        app.add_option("--grouping", grouping, "per_track or global")->capture_default_str();
        app.add_option("--averaging", averaging, "cumulative or ema:<decay>")->capture_default_str();
        app.add_option("--crossing", crossing, "edge_pixels or transitions")->capture_default_str();
    }

    RunConfig resolve()
    {
        config.grouping = parse_grouping(grouping);
        config.averaging = parse_averaging(averaging);
        if (crossing == "edge_pixels")
            config.excess.crossing = CrossingMode::EdgePixels;
        else if (crossing == "transitions")
            config.excess.crossing = CrossingMode::Transitions;
        else
            throw Error(ErrorKind::Range, "crossing must be 'edge_pixels' or 'transitions'");
        validate(config);
        return config;
    }
};

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Ingestion, "cannot write '" + path + "'");
    return out;
}

Roi parse_roi_flag(const std::string& text)
{
    int values[4];
    std::size_t start = 0;
    for (int k = 0; k < 4; ++k) {
        const std::size_t end = k < 3 ? text.find(',', start) : text.size();
        if (end == std::string::npos)
            throw Error(ErrorKind::Parse, "--roi expects x,y,w,h");
        const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + end, values[k]);
        if (ec != std::errc{} || ptr != text.data() + end)
            throw Error(ErrorKind::Parse, "--roi expects x,y,w,h");
        start = end + 1;
    }
    return {values[0], values[1], values[2], values[3]};
}

// PE values from a CSV with a header naming `column`, or one number per line.
std::vector<double> read_values(std::istream& in, const std::string& column)
{
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    int index = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            cells.push_back(cell);
        if (first) {
            first = false;
            double probe = 0.0;
            const auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), probe);
            if (ec != std::errc{} || cells.size() > 1) {
                const auto it = std::find(cells.begin(), cells.end(), column);
                if (it == cells.end())
                    throw Error(ErrorKind::Parse, "line 1: no column named '" + column + "'");
                index = static_cast<int>(it - cells.begin());
                continue;
            }
        }
        if (index >= static_cast<int>(cells.size()))
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": missing column");
        const std::string& cell = cells[index];
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size())
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
        values.push_back(v);
    }
    return values;
}

int cmd_analyze(const std::string& image_path, const std::string& roi_text, std::int64_t track_id,
                std::int64_t frame, ConfigFlags& flags)
{
    const RunConfig config = flags.resolve();
    const GrayImage image = read_pnm(std::filesystem::path(image_path));
    Roi roi = roi_text.empty() ? Roi{0, 0, image.width(), image.height()} : parse_roi_flag(roi_text);
    roi.id = track_id;
    roi.frame = frame;
    const RoiAnalysis a = analyze_roi(image, roi, config);
    const nlohmann::json out = {
        {"pe", a.excess.pe},
        {"L", a.excess.total_length},
        {"E_L", a.excess.total_excess},
        {"n_points_used", a.excess.n_points},
        {"n_pairs", a.excess.n_pairs},
        {"edge_pixels", a.edge_pixels},
        {"sample_seed", a.sample_seed},
        {"no_edges", a.no_edges},
        {"roi", {{"x", roi.x}, {"y", roi.y}, {"w", roi.w}, {"h", roi.h}}},
    };
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_run(const std::string& rois_path, const std::vector<std::string>& frame_list, const std::string& pattern,
            const std::string& out_path, const std::string& csv_prefix, ConfigFlags& flags)
{
    const RunConfig config = flags.resolve();
    if (frame_list.empty() && pattern.empty())
        throw Error(ErrorKind::Ingestion, "give either --frames or --frame-pattern");
    const std::vector<RoiRecord> rois = read_roi_file(rois_path);
    const std::vector<std::filesystem::path> paths(frame_list.begin(), frame_list.end());
    const FrameSet frames = load_frames(rois, paths, pattern);
    const RunReport report = process_sequence(frames, rois, config);

    if (out_path.empty() || out_path == "-") {
        write_report_json(std::cout, report, config);
    } else {
        auto out = open_out(out_path);
        write_report_json(out, report, config);
    }
    if (!csv_prefix.empty()) {
        auto rows = open_out(csv_prefix + "_rows.csv");
        write_rows_csv(rows, report);
        auto scatter = open_out(csv_prefix + "_scatter.csv");
        write_scatter_csv(scatter, report);
        auto hist = open_out(csv_prefix + "_histogram.csv");
        write_histogram_csv(hist, report.histogram);
    }

    std::size_t rejected = 0;
    for (const auto& t : report.tracks)
        rejected += t.kept ? 0 : 1;
    std::cerr << report.rows.size() << " rois, " << report.tracks.size() << " tracks (" << rejected
              << " rejected), " << report.fits.size() << " fits\n";
    return 0;
}

int cmd_fit(const std::string& input, const std::string& column, bool unit, double beta_threshold)
{
    std::vector<double> values;
    if (input == "-") {
        values = read_values(std::cin, column);
    } else {
        std::ifstream in(input);
        if (!in)
            throw Error(ErrorKind::Ingestion, "cannot open '" + input + "'");
        values = read_values(in, column);
    }
    const std::vector<double> samples = unit ? values : shift_to_unit(values);
    BetaParams params = fit_beta_mom(samples);
    const SampleStats stats = sample_stats(samples);
    params.support_shift = unit ? 0.0 : 1.0;
    const nlohmann::json out = {
        {"count", samples.size()},
        {"mean", stats.mean},
        {"variance", stats.variance},
        {"alpha", params.alpha},
        {"beta", params.beta},
        {"support_shift", params.support_shift},
        {"class", to_string(classify_texture(params, beta_threshold))},
    };
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_synth(SynthSpec spec, const std::string& kind, bool mask, const std::string& out_path)
{
    spec.kind = parse_synth_kind(kind);
    const GrayImage image = mask ? mask_to_image(gen_mask(spec)) : gen_image(spec);
    if (out_path == "-")
        write_pgm(std::cout, image);
    else
        write_pgm(std::filesystem::path(out_path), image);
    return 0;
}

int cmd_plot(const std::string& report_path, const std::string& out_path)
{
    std::ifstream in(report_path);
    if (!in)
        throw Error(ErrorKind::Ingestion, "cannot open '" + report_path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("report is not JSON: ") + e.what());
    }
    const std::string svg = render_svg(summary_from_json(doc));
    if (out_path == "-") {
        std::cout << svg;
    } else {
        auto out = open_out(out_path);
        out << svg;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Edge-excess texture density analysis"};
    app.require_subcommand(1);

    ConfigFlags analyze_flags;
    std::string image_path, roi_text;
    std::int64_t track_id = 0, frame = 0;
    auto* analyze = app.add_subcommand("analyze", "Edge excess of one roi in one image");
    analyze->add_option("--image", image_path, "PGM/PPM image")->required();
    analyze->add_option("--roi", roi_text, "x,y,w,h (default: whole image)");
    analyze->add_option("--track-id", track_id, "Track id used for seed derivation");
    analyze->add_option("--frame", frame, "Frame index used for seed derivation");
    analyze_flags.add_to(*analyze);

    ConfigFlags run_flags;
    std::string rois_path, pattern, out_path, csv_prefix;
    std::vector<std::string> frame_list;
    auto* run = app.add_subcommand("run", "Process an roi track file over an image sequence");
    run->add_option("--rois", rois_path, "ROI file (.jsonl or .csv)")->required();
    run->add_option("--frames", frame_list, "Frame images, frame i is the i-th path");
    run->add_option("--frame-pattern", pattern, "printf-style path, e.g. seq/frame_%04d.pgm");
    run->add_option("--out", out_path, "Report JSON path ('-' for stdout)");
    run->add_option("--csv-prefix", csv_prefix, "Also write <prefix>_rows/_scatter/_histogram.csv");
    run_flags.add_to(*run);

    std::string fit_input, column = "pe";
    bool unit = false;
    double fit_threshold = kDefaultBetaThreshold;
    auto* fit = app.add_subcommand("fit", "Method-of-moments Beta fit to a column of PE values");
    fit->add_option("--input", fit_input, "CSV file or '-' for stdin")->required();
    fit->add_option("--column", column, "Column holding PE values")->capture_default_str();
    fit->add_flag("--unit", unit, "Values are already on [0, 1]");
    fit->add_option("--beta-threshold", fit_threshold, "Beta below this is high texture")->capture_default_str();

    SynthSpec spec;
    std::string kind = "bernoulli", synth_out;
    bool mask = false;
    auto* synth = app.add_subcommand("synth", "Write a synthetic test image or edge mask as PGM");
    synth->add_option("--kind", kind, "blank, bernoulli, stripes or step")->capture_default_str();
    synth->add_option("--width", spec.width)->capture_default_str();
    synth->add_option("--height", spec.height)->capture_default_str();
    synth->add_option("--density", spec.density, "Edge fraction (bernoulli)")->capture_default_str();
    synth->add_option("--period", spec.period, "Stripe period in columns")->capture_default_str();
    synth->add_option("--amplitude", spec.amplitude, "Bright level of step/stripes")->capture_default_str();
    synth->add_option("--t-grad", spec.t_grad, "Threshold the bernoulli image is calibrated for")
        ->capture_default_str();
    synth->add_option("--seed", spec.seed)->capture_default_str();
    synth->add_flag("--mask", mask, "Write the edge mask (0/255) instead of an image");
    synth->add_option("--out", synth_out, "Output PGM ('-' for stdout)")->required();

    std::string report_path, svg_out;
    auto* plot = app.add_subcommand("plot", "Render a run report as SVG");
    plot->add_option("--report", report_path, "Report JSON from 'run'")->required();
    plot->add_option("--out", svg_out, "SVG path ('-' for stdout)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*analyze)
            return cmd_analyze(image_path, roi_text, track_id, frame, analyze_flags);
        if (*run)
            return cmd_run(rois_path, frame_list, pattern, out_path, csv_prefix, run_flags);
        if (*fit)
            return cmd_fit(fit_input, column, unit, fit_threshold);
        if (*synth)
            return cmd_synth(spec, kind, mask, synth_out);
        if (*plot)
            return cmd_plot(report_path, svg_out);
    } catch (const Error& e) {
        std::cerr << "texdens: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.is_statistical() ? kExitStatistics : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "texdens: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
