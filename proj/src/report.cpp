#include "texdens/report.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include "texdens/error.hpp"

namespace texdens {

using nlohmann::json;

namespace {

// Shortest representation that reads back to the same double.
std::string num(double v)
{
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

json histogram_to_json(const Histogram& h)
{
    return {{"bin_edges", h.bin_edges}, {"counts", h.counts}};
}

} // namespace

json config_to_json(const RunConfig& c)
{
    return {
        {"t_grad", c.t_grad},
        {"n_points", c.n_points},
        {"t_pe", c.t_pe},
        {"beta_threshold", c.beta_threshold},
        {"bins", c.bins},
        {"seed", c.seed},
        {"grouping", to_string(c.grouping)},
        {"averaging", to_string(c.averaging)},
        {"crossing", c.excess.crossing == CrossingMode::EdgePixels ? "edge_pixels" : "transitions"},
    };
}

json report_to_json(const RunReport& report, const RunConfig& config)
{
    json rows = json::array();
    for (const auto& row : report.rows) {
        const auto& r = row.record;
        const auto& a = row.analysis;
        rows.push_back({
            {"frame", r.frame},
            {"track_id", r.track_id},
            {"x", r.x},
            {"y", r.y},
            {"w", r.w},
            {"h", r.h},
            {"pe", a.excess.pe},
            {"L", a.excess.total_length},
            {"E_L", a.excess.total_excess},
            {"n_points_used", a.excess.n_points},
            {"n_pairs", a.excess.n_pairs},
            {"edge_pixels", a.edge_pixels},
            {"sample_seed", a.sample_seed},
            {"no_edges", a.no_edges},
            {"running_mean", row.running_mean},
            {"verdict", row.kept ? "keep" : "reject"},
        });
    }

    json tracks = json::array();
    for (const auto& t : report.tracks)
        tracks.push_back({{"track_id", t.track_id}, {"mean_pe", t.mean_pe}, {"count", t.count}, {"kept", t.kept}});

    json fits = json::array();
    for (const auto& f : report.fits) {
        json entry = {{"group", f.group}, {"id", f.id}, {"count", f.count}};
        if (f.params) {
            entry["alpha"] = f.params->alpha;
            entry["beta"] = f.params->beta;
            entry["support_shift"] = f.params->support_shift;
            entry["class"] = to_string(*f.texture);
        } else {
            entry["error"] = f.error.value_or("");
        }
        fits.push_back(std::move(entry));
    }

    json scatter = json::array();
    for (const auto& s : report.scatter)
        scatter.push_back({{"id", s.id}, {"alpha", s.alpha}, {"beta", s.beta}, {"class", to_string(s.texture)}});

    return {
        {"config", config_to_json(config)},
        {"rows", std::move(rows)},
        {"tracks", std::move(tracks)},
        {"fits", std::move(fits)},
        {"histogram", histogram_to_json(report.histogram)},
        {"scatter", std::move(scatter)},
    };
}

void write_report_json(std::ostream& out, const RunReport& report, const RunConfig& config)
{
    out << report_to_json(report, config).dump(2) << '\n';
}

void write_rows_csv(std::ostream& out, const RunReport& report)
{
    out << "frame,track_id,x,y,w,h,pe,L,E_L,n_points_used,edge_pixels,no_edges,running_mean,verdict\n";
    for (const auto& row : report.rows) {
        const auto& r = row.record;
        const auto& a = row.analysis;
        out << r.frame << ',' << r.track_id << ',' << r.x << ',' << r.y << ',' << r.w << ',' << r.h << ','
            << num(a.excess.pe) << ',' << num(a.excess.total_length) << ',' << num(a.excess.total_excess) << ','
            << a.excess.n_points << ',' << a.edge_pixels << ',' << (a.no_edges ? 1 : 0) << ','
            << num(row.running_mean) << ',' << (row.kept ? "keep" : "reject") << '\n';
    }
}

void write_scatter_csv(std::ostream& out, const RunReport& report)
{
    out << "id,alpha,beta,class\n";
    for (const auto& s : report.scatter)
        out << s.id << ',' << num(s.alpha) << ',' << num(s.beta) << ',' << to_string(s.texture) << '\n';
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram)
{
    out << "lower,upper,count\n";
    for (std::size_t i = 0; i < histogram.counts.size(); ++i)
        out << num(histogram.bin_edges[i]) << ',' << num(histogram.bin_edges[i + 1]) << ',' << histogram.counts[i]
            << '\n';
}

ReportSummary summary_from_json(const json& doc)
{
    try {
        ReportSummary s;
        const auto& h = doc.at("histogram");
        s.histogram.bin_edges = h.at("bin_edges").get<std::vector<double>>();
        s.histogram.counts = h.at("counts").get<std::vector<std::uint64_t>>();
        if (s.histogram.bin_edges.size() != s.histogram.counts.size() + 1)
            throw Error(ErrorKind::Parse, "report histogram has inconsistent bins");
        for (const auto& row : doc.at("scatter")) {
            const std::string cls = row.at("class").get<std::string>();
            s.scatter.push_back({row.at("id").get<std::int64_t>(), row.at("alpha").get<double>(),
                                 row.at("beta").get<double>(),
                                 cls == "high" ? TextureClass::HighTexture : TextureClass::LowTexture});
        }
        for (const auto& f : doc.at("fits")) {
            GroupFit fit;
            fit.group = f.at("group").get<std::string>();
            fit.id = f.at("id").get<std::int64_t>();
            fit.count = f.at("count").get<std::size_t>();
            if (f.contains("alpha")) {
                fit.params = BetaParams{f.at("alpha").get<double>(), f.at("beta").get<double>(),
                                        f.value("support_shift", 1.0)};
                fit.texture = f.at("class").get<std::string>() == "high" ? TextureClass::HighTexture
                                                                           : TextureClass::LowTexture;
            } else {
                fit.error = f.value("error", std::string{});
            }
            s.fits.push_back(std::move(fit));
        }
        s.beta_threshold = doc.at("config").at("beta_threshold").get<double>();
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("not a run report: ") + e.what());
    }
}

} // namespace texdens
