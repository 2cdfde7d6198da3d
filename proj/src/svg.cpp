#include "texdens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "texdens/error.hpp"

namespace texdens {

namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 300.0;
constexpr double kMargin = 45.0;
constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

struct Frame {
    double left, top, width, height;
    double x0, x1, y0, y1;

    double sx(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double sy(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

void axes(std::ostringstream& out, const Frame& f, const std::string& title, const std::string& xlabel,
          const std::string& ylabel)
{
    out << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << f.width << "\" height=\"" << f.height
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << f.left + f.width / 2 << "\" y=\"" << f.top - 10
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << f.left + f.width / 2 << "\" y=\"" << f.top + f.height + 32
        << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n";
    out << "<text x=\"" << f.left - 32 << "\" y=\"" << f.top + f.height / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " << f.left - 32 << ' '
        << f.top + f.height / 2 << ")\">" << ylabel << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
        out << "<text x=\"" << f.sx(xv) << "\" y=\"" << f.top + f.height + 15
            << "\" text-anchor=\"middle\" font-size=\"10\">" << xv << "</text>\n";
        out << "<text x=\"" << f.left - 5 << "\" y=\"" << f.sy(yv) + 3
            << "\" text-anchor=\"end\" font-size=\"10\">" << yv << "</text>\n";
    }
}

} // namespace

std::string render_svg(const ReportSummary& summary)
{
    const Histogram& h = summary.histogram;
    if (h.counts.empty() || h.bin_edges.size() != h.counts.size() + 1)
        throw Error(ErrorKind::Parse, "report has no histogram to plot");

    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * (kPanelW + 2 * kMargin) << "\" height=\""
        << kPanelH + 2 * kMargin << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Histogram as a density so the fitted curves share its scale.
    const double total = static_cast<double>(h.total());
    std::vector<double> density(h.counts.size(), 0.0);
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double width = h.bin_edges[i + 1] - h.bin_edges[i];
        density[i] = total > 0 ? static_cast<double>(h.counts[i]) / (total * width) : 0.0;
    }

    struct Curve {
        std::vector<std::pair<double, double>> points;
        std::string label;
    };
    std::vector<Curve> curves;
    double y_max = *std::max_element(density.begin(), density.end());
    for (const auto& fit : summary.fits) {
        if (!fit.params)
            continue;
        Curve c{{}, fit.group};
        for (int i = 1; i < 200; ++i) {
            const double p = i / 200.0;
            const double d = beta_pdf(*fit.params, p);
            if (std::isfinite(d)) {
                c.points.emplace_back(1.0 + p, d);
                y_max = std::max(y_max, std::min(d, 50.0));
            }
        }
        curves.push_back(std::move(c));
    }
    if (y_max <= 0.0)
        y_max = 1.0;

    const Frame hist{kMargin, kMargin, kPanelW, kPanelH, 1.0, 2.0, 0.0, y_max * 1.05};
    axes(out, hist, "Edge excess histogram", "PE", "density");
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double x = hist.sx(h.bin_edges[i]);
        const double w = hist.sx(h.bin_edges[i + 1]) - x;
        const double y = hist.sy(density[i]);
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << hist.sy(0) - y
            << "\" fill=\"#c6dbef\" stroke=\"#6baed6\"/>\n";
    }
    for (std::size_t k = 0; k < curves.size(); ++k) {
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[k % std::size(kPalette)]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : curves[k].points)
            out << hist.sx(x) << ',' << hist.sy(std::min(y, hist.y1)) << ' ';
        out << "\"><title>" << curves[k].label << "</title></polyline>\n";
    }

    // Scatter of fitted shape parameters.
    double a_max = 1.0;
    double b_max = summary.beta_threshold * 2.0;
    for (const auto& s : summary.scatter) {
        a_max = std::max(a_max, s.alpha);
        b_max = std::max(b_max, s.beta);
    }
    const double left = 2 * kMargin + kPanelW + kMargin;
    const Frame sc{left, kMargin, kPanelW, kPanelH, 0.0, a_max * 1.1, 0.0, b_max * 1.1};
    axes(out, sc, "Beta fit parameters", "alpha", "beta");
    out << "<line x1=\"" << sc.sx(sc.x0) << "\" y1=\"" << sc.sy(summary.beta_threshold) << "\" x2=\"" << sc.sx(sc.x1)
        << "\" y2=\"" << sc.sy(summary.beta_threshold) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& s : summary.scatter) {
        out << "<circle cx=\"" << sc.sx(s.alpha) << "\" cy=\"" << sc.sy(s.beta) << "\" r=\"4\" fill=\""
            << (s.texture == TextureClass::HighTexture ? "#d62728" : "#1f77b4") << "\"><title>" << s.id
            << "</title></circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace texdens
