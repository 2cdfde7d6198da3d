#include "texdens/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "texdens/error.hpp"

namespace texdens {

namespace {

[[noreturn]] void fail(const std::string& what)
{
    throw Error(ErrorKind::Ingestion, "pnm: " + what);
}

// Header integer, skipping whitespace and '#' comments.
long read_header_int(std::istream& in)
{
    int c = in.get();
    for (;;) {
        if (c == '#') {
            while (c != EOF && c != '\n')
                c = in.get();
        } else if (c != EOF && std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c))
        fail("malformed header");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1'000'000'000)
            fail("header value too large");
        c = in.get();
    }
    // Exactly one whitespace character separates the header from binary data.
    if (c != EOF && !std::isspace(c))
        in.unget();
    return value;
}

unsigned read_sample(std::istream& in, bool ascii, long maxval)
{
    if (ascii) {
        const long v = read_header_int(in);
        if (v > maxval)
            fail("sample exceeds maxval");
        return static_cast<unsigned>(v);
    }
    unsigned v = 0;
    const int bytes = maxval > 255 ? 2 : 1;
    for (int i = 0; i < bytes; ++i) {
        const int c = in.get();
        if (c == EOF)
            fail("truncated raster");
        v = (v << 8) | static_cast<unsigned>(c);
    }
    if (v > static_cast<unsigned>(maxval))
        fail("sample exceeds maxval");
    return v;
}

std::uint8_t to_8bit(double v, long maxval)
{
    if (maxval == 255)
        return static_cast<std::uint8_t>(std::lround(v));
    return static_cast<std::uint8_t>(std::lround(v * 255.0 / static_cast<double>(maxval)));
}

} // namespace

GrayImage read_pnm(std::istream& in)
{
    if (in.get() != 'P')
        fail("missing magic number");
    const int kind = in.get();
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        fail("unsupported format (need P2, P3, P5 or P6)");
    const bool ascii = kind == '2' || kind == '3';
    const bool colour = kind == '3' || kind == '6';

    const long width = read_header_int(in);
    const long height = read_header_int(in);
    const long maxval = read_header_int(in);
    if (width < 1 || height < 1 || width > 65535 || height > 65535)
        fail("bad dimensions");
    if (maxval < 1 || maxval > 65535)
        fail("maxval must lie in [1, 65535]");

    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (auto& px : pixels) {
        if (colour) {
            const double r = read_sample(in, ascii, maxval);
            const double g = read_sample(in, ascii, maxval);
            const double b = read_sample(in, ascii, maxval);
            px = to_8bit(0.299 * r + 0.587 * g + 0.114 * b, maxval);
        } else {
            px = to_8bit(read_sample(in, ascii, maxval), maxval);
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

GrayImage read_pnm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Ingestion, "cannot open image '" + path.string() + "'");
    try {
        return read_pnm(in);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

void write_pgm(std::ostream& out, const GrayImage& image)
{
    out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data().data()), static_cast<std::streamsize>(image.data().size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Ingestion, "cannot write image '" + path.string() + "'");
    write_pgm(out, image);
}

GrayImage mask_to_image(const EdgeMap& edge_map)
{
    std::vector<std::uint8_t> pixels(edge_map.mask().size());
    std::transform(edge_map.mask().begin(), edge_map.mask().end(), pixels.begin(),
                   [](std::uint8_t m) -> std::uint8_t { return m ? 255 : 0; });
    return GrayImage(edge_map.width(), edge_map.height(), std::move(pixels));
}

} // namespace texdens
