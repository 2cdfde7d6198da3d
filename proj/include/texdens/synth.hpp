#pragma once

#include <cstdint>
#include <string_view>

#include "texdens/edge_map.hpp"
#include "texdens/image.hpp"
#include "texdens/rng.hpp"

namespace texdens {

enum class SynthKind { Blank, Bernoulli, Stripes, Step };

/// Throws Error(InvalidSpec) for unknown names. Accepts "blank", "bernoulli"
/// (or "bernoulli_mask"), "stripes" and "step".
SynthKind parse_synth_kind(std::string_view name);
const char* to_string(SynthKind kind) noexcept;

struct SynthSpec {
    SynthKind kind = SynthKind::Blank;
    int width = 64;
    int height = 64;
    double density = 0.5;  ///< bernoulli: probability of an edge pixel
    int period = 8;        ///< stripes: columns per full cycle, >= 2
    int amplitude = 200;   ///< step / stripes: intensity of the bright level (dark is 0)
    double t_grad = kDefaultGradientThreshold; ///< bernoulli image: threshold the density is calibrated for
    std::uint64_t seed = 0;
};

/// Throws Error(InvalidSpec) when a field is out of range for the kind.
void validate(const SynthSpec& spec);

/// Synthetic edge mask.
///   blank      all off
///   bernoulli  each pixel on independently with probability `density`
///   stripes    column x on iff (x mod period) < period / 2
///   step       on at the two columns either side of x = width / 2
EdgeMap gen_mask(const SynthSpec& spec);

/// Synthetic image whose edge map has known structure.
///   blank      constant 128
///   step       0 left of x = width / 2, `amplitude` from there on
///   stripes    square wave, bright iff (x mod period) < period / 2
///   bernoulli  uniform noise around 128 whose amplitude is bisected so the
///              fraction of interior pixels with Sobel magnitude > t_grad is
///              as close to `density` as the 8-bit quantisation allows
GrayImage gen_image(const SynthSpec& spec);

/// Copies src into dst with its top-left corner at (x, y), clipped to dst.
void paste(GrayImage& dst, const GrayImage& src, int x, int y);

/// Standard normal by Box-Muller (one value per call, the pair's second half is dropped).
double draw_normal(Xoshiro256& rng);

/// Gamma(shape, 1) by Marsaglia-Tsang; shapes below 1 use the U^(1/shape) boost.
double draw_gamma(Xoshiro256& rng, double shape);

/// Beta(alpha, beta) as X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
double draw_beta(Xoshiro256& rng, double alpha, double beta);

} // namespace texdens
