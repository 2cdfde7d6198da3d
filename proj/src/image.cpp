#include "texdens/image.hpp"

#include <string>

#include "texdens/error.hpp"

namespace texdens {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DegenerateRoi: return "degenerate-roi";
    case ErrorKind::Range: return "range";
    case ErrorKind::ConstantSample: return "constant-sample";
    case ErrorKind::InfeasibleMoments: return "infeasible-moments";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Ingestion: return "ingestion";
    }
    return "unknown";
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(width > 0 && height > 0 ? static_cast<std::size_t>(width) * height : 0, fill))
{
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data))
{
    if (width < 1 || height < 1)
        throw Error(ErrorKind::Range, "image dimensions must be positive");
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw Error(ErrorKind::Range, "image data length does not match width x height");
}

void validate_roi(const GrayImage& image, const Roi& roi)
{
    const auto describe = [&] {
        return "roi (" + std::to_string(roi.x) + "," + std::to_string(roi.y) + " " + std::to_string(roi.w) + "x" +
               std::to_string(roi.h) + ") of track " + std::to_string(roi.id) + " in frame " +
               std::to_string(roi.frame);
    };
    if (roi.w < 3 || roi.h < 3)
        throw Error(ErrorKind::DegenerateRoi, describe() + " is smaller than 3x3");
    if (roi.x < 0 || roi.y < 0 || roi.x > image.width() - roi.w || roi.y > image.height() - roi.h)
        throw Error(ErrorKind::DegenerateRoi, describe() + " is outside the " + std::to_string(image.width()) + "x" +
                                                  std::to_string(image.height()) + " image");
}

} // namespace texdens
