#include "texdens/reference.hpp"

#include <algorithm>
#include <cmath>

namespace texdens::reference {

MagnitudeRaster compute_gradient(const GrayImage& image, const Roi& roi)
{
    validate_roi(image, roi);

    static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};

    MagnitudeRaster out{roi.w, roi.h, std::vector<double>(static_cast<std::size_t>(roi.w) * roi.h, 0.0)};
    for (int y = 1; y < roi.h - 1; ++y) {
        for (int x = 1; x < roi.w - 1; ++x) {
            int gx = 0;
            int gy = 0;
            for (int v = -1; v <= 1; ++v) {
                for (int u = -1; u <= 1; ++u) {
                    const int pixel = image(roi.x + x + u, roi.y + y + v);
                    gx += kx[v + 1][u + 1] * pixel;
                    gy += ky[v + 1][u + 1] * pixel;
                }
            }
            out.values[static_cast<std::size_t>(y) * roi.w + x] = std::sqrt(static_cast<double>(gx * gx + gy * gy));
        }
    }
    return out;
}

ExcessResult graph_excess(const EdgeMap& edge_map, const PointSet& points, const ExcessOptions& options)
{
    std::vector<Point> sorted = points.points;
    std::sort(sorted.begin(), sorted.end());

    ExcessResult result;
    result.n_points = sorted.size();
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const SegmentExcess s = segment_excess(edge_map, sorted[i], sorted[j], options);
            result.total_length += s.length;
            result.total_excess += s.w;
            ++result.n_pairs;
        }
    }
    if (result.total_length > 0.0)
        result.pe = 1.0 + result.total_excess / result.total_length;
    return result;
}

} // namespace texdens::reference
