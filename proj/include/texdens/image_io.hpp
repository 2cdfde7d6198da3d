#pragma once

#include <filesystem>
#include <iosfwd>

#include "texdens/edge_map.hpp"
#include "texdens/image.hpp"

namespace texdens {

/// Reads PGM (P2/P5) and, for convenience, PPM (P3/P6). Colour is converted
/// with the BT.601 luma weights 0.299 R + 0.587 G + 0.114 B; maxval other than
/// 255 is rescaled to 8 bits. Throws Error(Ingestion) on any malformed input.
GrayImage read_pnm(std::istream& in);
GrayImage read_pnm(const std::filesystem::path& path);

/// Binary P5 with maxval 255.
void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// Mask as a P5 image, 255 for edge pixels and 0 elsewhere.
GrayImage mask_to_image(const EdgeMap& edge_map);

} // namespace texdens
