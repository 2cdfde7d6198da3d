#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace texdens {

struct Point {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const Point&, const Point&) = default;
};

/// 8-bit luminance raster, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t operator()(int x, int y) const noexcept
    {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& operator()(int x, int y) noexcept
    {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<std::uint8_t>& data() const noexcept { return data_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// A tracked region of interest inside one frame.
struct Roi {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    std::int64_t id = 0;
    std::int64_t frame = 0;
};

/// Throws Error(DegenerateRoi) unless the roi lies inside the image and is at least 3x3.
void validate_roi(const GrayImage& image, const Roi& roi);

} // namespace texdens
