#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "texdens/image.hpp"

namespace texdens {

inline constexpr double kDefaultGradientThreshold = 48.0;

/// Gradient magnitudes of one ROI crop, row-major.
struct MagnitudeRaster {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const noexcept { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Gradient magnitudes plus the binary mask `magnitude > threshold`.
class EdgeMap {
public:
    EdgeMap() = default;
    EdgeMap(MagnitudeRaster magnitude, double threshold);

    /// Builds a map straight from a boolean mask (magnitude 1 on, 0 off, threshold 0.5).
    static EdgeMap from_mask(int width, int height, std::vector<std::uint8_t> mask);

    int width() const noexcept { return magnitude_.width; }
    int height() const noexcept { return magnitude_.height; }
    double threshold() const noexcept { return threshold_; }

    bool contains(Point p) const noexcept
    {
        return p.x >= 0 && p.y >= 0 && p.x < width() && p.y < height();
    }
    bool edge(int x, int y) const noexcept { return mask_[static_cast<std::size_t>(y) * width() + x] != 0; }
    bool edge(Point p) const noexcept { return edge(p.x, p.y); }
    double magnitude(int x, int y) const noexcept { return magnitude_.at(x, y); }

    const MagnitudeRaster& magnitudes() const noexcept { return magnitude_; }
    const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }

    std::size_t edge_count() const noexcept;

    /// Sets a pixel on. Used by synthetic generators and property tests.
    void set_edge(Point p);

private:
    MagnitudeRaster magnitude_;
    std::vector<std::uint8_t> mask_;
    double threshold_ = 0.0;
};

/// 3x3 Sobel, L2 magnitude, over the roi crop. The 1-pixel frame of the crop is 0.
/// Rows are processed in parallel.
MagnitudeRaster compute_gradient(const GrayImage& image, const Roi& roi);

/// Mask is true exactly where magnitude > t_grad. Throws Error(Range) for t_grad < 0.
EdgeMap threshold_edges(MagnitudeRaster magnitude, double t_grad);

} // namespace texdens
