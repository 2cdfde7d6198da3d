#include "texdens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "texdens/error.hpp"

namespace texdens {

SynthKind parse_synth_kind(std::string_view name)
{
    if (name == "blank") return SynthKind::Blank;
    if (name == "bernoulli" || name == "bernoulli_mask") return SynthKind::Bernoulli;
    if (name == "stripes") return SynthKind::Stripes;
    if (name == "step") return SynthKind::Step;
    throw Error(ErrorKind::InvalidSpec, "unknown synthetic kind '" + std::string(name) + "'");
}

const char* to_string(SynthKind kind) noexcept
{
    switch (kind) {
    case SynthKind::Blank: return "blank";
    case SynthKind::Bernoulli: return "bernoulli";
    case SynthKind::Stripes: return "stripes";
    case SynthKind::Step: return "step";
    }
    return "unknown";
}

void validate(const SynthSpec& spec)
{
    if (spec.width < 1 || spec.height < 1)
        throw Error(ErrorKind::InvalidSpec, "synthetic width and height must be positive");
    switch (spec.kind) {
    case SynthKind::Blank:
        break;
    case SynthKind::Bernoulli:
        if (!(spec.density >= 0.0 && spec.density <= 1.0))
            throw Error(ErrorKind::InvalidSpec, "bernoulli density must lie in [0, 1]");
        if (!(spec.t_grad >= 0.0))
            throw Error(ErrorKind::InvalidSpec, "bernoulli calibration threshold must be non-negative");
        break;
    case SynthKind::Stripes:
        if (spec.period < 2)
            throw Error(ErrorKind::InvalidSpec, "stripe period must be at least 2");
        [[fallthrough]];
    case SynthKind::Step:
        if (spec.amplitude < 0 || spec.amplitude > 255)
            throw Error(ErrorKind::InvalidSpec, "amplitude must lie in [0, 255]");
        if (spec.kind == SynthKind::Step && spec.width < 2)
            throw Error(ErrorKind::InvalidSpec, "a step needs at least two columns");
        break;
    }
}

namespace {

bool stripe_on(int x, int period) { return x % period < period / 2; }

// Sobel-magnitude edge fraction over the interior of a whole image.
double interior_edge_fraction(const GrayImage& image, double t_grad)
{
    if (image.width() < 3 || image.height() < 3)
        return 0.0;
    const EdgeMap edges = threshold_edges(compute_gradient(image, {0, 0, image.width(), image.height()}), t_grad);
    const auto interior = static_cast<double>(image.width() - 2) * static_cast<double>(image.height() - 2);
    return static_cast<double>(edges.edge_count()) / interior;
}

GrayImage scaled_noise(int width, int height, const std::vector<double>& noise, double amplitude)
{
    std::vector<std::uint8_t> pixels(noise.size());
    std::transform(noise.begin(), noise.end(), pixels.begin(), [amplitude](double u) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(128.0 + amplitude * u), 0L, 255L));
    });
    return GrayImage(width, height, std::move(pixels));
}

} // namespace

EdgeMap gen_mask(const SynthSpec& spec)
{
    validate(spec);
    const auto size = static_cast<std::size_t>(spec.width) * spec.height;
    std::vector<std::uint8_t> mask(size, 0);

    switch (spec.kind) {
    case SynthKind::Blank:
        break;
    case SynthKind::Bernoulli: {
        Xoshiro256 rng(spec.seed);
        for (auto& m : mask)
            m = rng.uniform() < spec.density ? 1 : 0;
        break;
    }
    case SynthKind::Stripes:
        for (int y = 0; y < spec.height; ++y)
            for (int x = 0; x < spec.width; ++x)
                mask[static_cast<std::size_t>(y) * spec.width + x] = stripe_on(x, spec.period) ? 1 : 0;
        break;
    case SynthKind::Step: {
        const int boundary = spec.width / 2;
        for (int y = 0; y < spec.height; ++y)
            for (int x : {boundary - 1, boundary})
                mask[static_cast<std::size_t>(y) * spec.width + x] = 1;
        break;
    }
    }
    return EdgeMap::from_mask(spec.width, spec.height, std::move(mask));
}

GrayImage gen_image(const SynthSpec& spec)
{
    validate(spec);
    GrayImage image(spec.width, spec.height, 128);

    switch (spec.kind) {
    case SynthKind::Blank:
        break;
    case SynthKind::Step:
        for (int y = 0; y < spec.height; ++y)
            for (int x = 0; x < spec.width; ++x)
                image(x, y) = static_cast<std::uint8_t>(x < spec.width / 2 ? 0 : spec.amplitude);
        break;
    case SynthKind::Stripes:
        for (int y = 0; y < spec.height; ++y)
            for (int x = 0; x < spec.width; ++x)
                image(x, y) = static_cast<std::uint8_t>(stripe_on(x, spec.period) ? spec.amplitude : 0);
        break;
    case SynthKind::Bernoulli: {
        Xoshiro256 rng(spec.seed);
        std::vector<double> noise(static_cast<std::size_t>(spec.width) * spec.height);
        for (auto& u : noise)
            u = 2.0 * rng.uniform() - 1.0;

        // Edge fraction grows with the noise amplitude; bisect for the target.
        double lo = 0.0;
        double hi = 127.5;
        for (int iter = 0; iter < 40; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double fraction = interior_edge_fraction(scaled_noise(spec.width, spec.height, noise, mid), spec.t_grad);
            (fraction < spec.density ? lo : hi) = mid;
        }
        GrayImage low = scaled_noise(spec.width, spec.height, noise, lo);
        GrayImage high = scaled_noise(spec.width, spec.height, noise, hi);
        const double err_low = std::abs(interior_edge_fraction(low, spec.t_grad) - spec.density);
        const double err_high = std::abs(interior_edge_fraction(high, spec.t_grad) - spec.density);
        image = err_low <= err_high ? std::move(low) : std::move(high);
        break;
    }
    }
    return image;
}

void paste(GrayImage& dst, const GrayImage& src, int x, int y)
{
    for (int sy = 0; sy < src.height(); ++sy) {
        const int dy = y + sy;
        if (dy < 0 || dy >= dst.height())
            continue;
        for (int sx = 0; sx < src.width(); ++sx) {
            const int dx = x + sx;
            if (dx >= 0 && dx < dst.width())
                dst(dx, dy) = src(sx, sy);
        }
    }
}

double draw_normal(Xoshiro256& rng)
{
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_gamma(Xoshiro256& rng, double shape)
{
    if (!(shape > 0.0))
        throw Error(ErrorKind::InvalidSpec, "gamma shape must be positive");
    if (shape < 1.0)
        return draw_gamma(rng, shape + 1.0) * std::pow(1.0 - rng.uniform(), 1.0 / shape);

    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = draw_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0)
            continue;
        v = v * v * v;
        const double u = 1.0 - rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

double draw_beta(Xoshiro256& rng, double alpha, double beta)
{
    const double x = draw_gamma(rng, alpha);
    const double y = draw_gamma(rng, beta);
    return x / (x + y);
}

} // namespace texdens
