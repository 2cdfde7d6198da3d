#include "texdens/edge_map.hpp"

#include <algorithm>
#include <cmath>

#include "texdens/error.hpp"

namespace texdens {

EdgeMap::EdgeMap(MagnitudeRaster magnitude, double threshold)
    : magnitude_(std::move(magnitude)), mask_(magnitude_.values.size()), threshold_(threshold)
{
    std::transform(magnitude_.values.begin(), magnitude_.values.end(), mask_.begin(),
                   [threshold](double m) -> std::uint8_t { return m > threshold ? 1 : 0; });
}

EdgeMap EdgeMap::from_mask(int width, int height, std::vector<std::uint8_t> mask)
{
    if (width < 1 || height < 1 || mask.size() != static_cast<std::size_t>(width) * height)
        throw Error(ErrorKind::Range, "mask size does not match width x height");
    MagnitudeRaster raster{width, height, std::vector<double>(mask.size())};
    std::transform(mask.begin(), mask.end(), raster.values.begin(), [](std::uint8_t m) { return m ? 1.0 : 0.0; });
    return EdgeMap(std::move(raster), 0.5);
}

std::size_t EdgeMap::edge_count() const noexcept
{
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

void EdgeMap::set_edge(Point p)
{
    const auto k = static_cast<std::size_t>(p.y) * width() + p.x;
    magnitude_.values[k] = std::max(magnitude_.values[k], std::nextafter(threshold_, HUGE_VAL));
    mask_[k] = 1;
}

MagnitudeRaster compute_gradient(const GrayImage& image, const Roi& roi)
{
    validate_roi(image, roi);

    MagnitudeRaster out{roi.w, roi.h, std::vector<double>(static_cast<std::size_t>(roi.w) * roi.h, 0.0)};

#pragma omp parallel for schedule(static) if (roi.h > 64)
    for (int y = 1; y < roi.h - 1; ++y) {
        const int iy = roi.y + y;
        for (int x = 1; x < roi.w - 1; ++x) {
            const int ix = roi.x + x;
            const int tl = image(ix - 1, iy - 1), tc = image(ix, iy - 1), tr = image(ix + 1, iy - 1);
            const int ml = image(ix - 1, iy), mr = image(ix + 1, iy);
            const int bl = image(ix - 1, iy + 1), bc = image(ix, iy + 1), br = image(ix + 1, iy + 1);
            const int gx = (tr + 2 * mr + br) - (tl + 2 * ml + bl);
            const int gy = (bl + 2 * bc + br) - (tl + 2 * tc + tr);
            out.values[static_cast<std::size_t>(y) * roi.w + x] = std::sqrt(static_cast<double>(gx * gx + gy * gy));
        }
    }
    return out;
}

EdgeMap threshold_edges(MagnitudeRaster magnitude, double t_grad)
{
    if (!(t_grad >= 0.0))
        throw Error(ErrorKind::Range, "gradient threshold must be non-negative");
    return EdgeMap(std::move(magnitude), t_grad);
}

} // namespace texdens
