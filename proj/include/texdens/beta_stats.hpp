#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace texdens {

inline constexpr double kDefaultBetaThreshold = 1.5;
inline constexpr std::size_t kDefaultHistogramBins = 32;

/// Shape parameters of a Beta distribution on [0, 1].
///
/// `support_shift` records where the fitted data lived: 1.0 when the
/// parameters describe PE values on [1, 2], 0.0 for data already on [0, 1].
struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;
    double support_shift = 0.0;

    double mean() const noexcept { return alpha / (alpha + beta); }
    double variance() const noexcept
    {
        const double s = alpha + beta;
        return alpha * beta / (s * s * (s + 1.0));
    }
};

/// First two moments of a sample. `variance` is the second central moment
/// (divided by count), which is what the moment-matching uses.
struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
    std::size_t count = 0;
};

struct Histogram {
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const noexcept;
};

enum class TextureClass { HighTexture, LowTexture };

const char* to_string(TextureClass c) noexcept;

struct ScatterRow {
    std::int64_t id = 0;
    double alpha = 0.0;
    double beta = 0.0;
    TextureClass texture = TextureClass::LowTexture;
};

/// PE on [1, 2] to [0, 1]. Throws Error(Range) for values outside [1, 2].
std::vector<double> shift_to_unit(std::span<const double> pe_values);
std::vector<double> shift_from_unit(std::span<const double> unit_values);

/// Two-pass mean and second central moment. Throws Error(Range) when empty.
SampleStats sample_stats(std::span<const double> samples);

/// Method-of-moments fit:
///   alpha = mu * (mu (1 - mu) / var - 1),  beta = alpha * (1 / mu - 1)
///
/// Throws Error(Range) if mu is outside (0, 1) or fewer than two samples,
/// Error(ConstantSample) if var == 0 and Error(InfeasibleMoments) if
/// var >= mu (1 - mu).
BetaParams fit_beta_mom(const SampleStats& stats);
BetaParams fit_beta_mom(std::span<const double> samples);

/// Density p^(a-1) (1-p)^(b-1) / B(a, b), evaluated in log space.
/// At p = 0 or 1 the analytic limit is returned; a pole there throws Error(Pole).
double beta_pdf(const BetaParams& params, double p);

/// Uniform bins over [1, 2]; the last bin is closed on the right.
/// Throws Error(Range) for bins == 0 or values outside [1, 2].
Histogram build_histogram(std::span<const double> pe_values, std::size_t bins = kDefaultHistogramBins);

/// HighTexture iff beta < beta_threshold.
TextureClass classify_texture(const BetaParams& params, double beta_threshold = kDefaultBetaThreshold);

struct IdentifiedFit {
    std::int64_t id = 0;
    BetaParams params;
};

std::vector<ScatterRow> scatter_params(std::span<const IdentifiedFit> fits,
                                       double beta_threshold = kDefaultBetaThreshold);

} // namespace texdens
