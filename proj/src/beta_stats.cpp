#include "texdens/beta_stats.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "texdens/error.hpp"

namespace texdens {

std::uint64_t Histogram::total() const noexcept
{
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

const char* to_string(TextureClass c) noexcept
{
    return c == TextureClass::HighTexture ? "high" : "low";
}

std::vector<double> shift_to_unit(std::span<const double> pe_values)
{
    std::vector<double> out;
    out.reserve(pe_values.size());
    for (double v : pe_values) {
        if (!(v >= 1.0 && v <= 2.0))
            throw Error(ErrorKind::Range, "edge excess value " + std::to_string(v) + " is outside [1, 2]");
        out.push_back(v - 1.0);
    }
    return out;
}

std::vector<double> shift_from_unit(std::span<const double> unit_values)
{
    std::vector<double> out;
    out.reserve(unit_values.size());
    for (double v : unit_values) {
        if (!(v >= 0.0 && v <= 1.0))
            throw Error(ErrorKind::Range, "unit value " + std::to_string(v) + " is outside [0, 1]");
        out.push_back(v + 1.0);
    }
    return out;
}

SampleStats sample_stats(std::span<const double> samples)
{
    if (samples.empty())
        throw Error(ErrorKind::Range, "no samples");
    const auto n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    // Second pass with the compensating term of the corrected two-pass algorithm.
    double squares = 0.0;
    double residual = 0.0;
    for (double s : samples) {
        const double d = s - mean;
        squares += d * d;
        residual += d;
    }
    const double variance = (squares - residual * residual / n) / n;
    return {mean + residual / n, variance, samples.size()};
}

BetaParams fit_beta_mom(const SampleStats& stats)
{
    const double mu = stats.mean;
    const double var = stats.variance;
    if (stats.count < 2)
        throw Error(ErrorKind::Range, "a moment fit needs at least two samples");
    if (var == 0.0)
        throw Error(ErrorKind::ConstantSample, "sample variance is zero; no Beta distribution matches");
    if (!(mu > 0.0 && mu < 1.0))
        throw Error(ErrorKind::Range, "sample mean " + std::to_string(mu) + " is outside (0, 1)");
    if (!(var > 0.0))
        throw Error(ErrorKind::Range, "sample variance must be positive");
    const double bound = mu * (1.0 - mu);
    if (!(var < bound))
        throw Error(ErrorKind::InfeasibleMoments, "sample variance " + std::to_string(var) +
                                                      " is not below mu(1 - mu) = " + std::to_string(bound));

    BetaParams out;
    out.alpha = mu * (bound / var - 1.0);
    out.beta = out.alpha * (1.0 / mu - 1.0);
    return out;
}

BetaParams fit_beta_mom(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw Error(ErrorKind::Range, "a moment fit needs at least two samples");
    return fit_beta_mom(sample_stats(samples));
}

double beta_pdf(const BetaParams& params, double p)
{
    const double a = params.alpha;
    const double b = params.beta;
    if (!(a > 0.0 && b > 0.0))
        throw Error(ErrorKind::Range, "Beta shapes must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorKind::Range, "Beta density argument " + std::to_string(p) + " is outside [0, 1]");

    const double log_b = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);

    if (p == 0.0 || p == 1.0) {
        // Only the factor belonging to this end matters; the other one is 1.
        const double shape = p == 0.0 ? a : b;
        if (shape < 1.0)
            throw Error(ErrorKind::Pole, "Beta density has a pole at p = " + std::to_string(p));
        if (shape > 1.0)
            return 0.0;
        return std::exp(-log_b);
    }
    return std::exp((a - 1.0) * std::log(p) + (b - 1.0) * std::log1p(-p) - log_b);
}

Histogram build_histogram(std::span<const double> pe_values, std::size_t bins)
{
    if (bins == 0)
        throw Error(ErrorKind::Range, "histogram needs at least one bin");

    Histogram h;
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.bin_edges[i] = 1.0 + static_cast<double>(i) / static_cast<double>(bins);
    h.counts.assign(bins, 0);

    for (double v : pe_values) {
        if (!(v >= 1.0 && v <= 2.0))
            throw Error(ErrorKind::Range, "edge excess value " + std::to_string(v) + " is outside [1, 2]");
        auto bin = static_cast<std::size_t>((v - 1.0) * static_cast<double>(bins));
        if (bin >= bins)
            bin = bins - 1;
        ++h.counts[bin];
    }
    return h;
}

TextureClass classify_texture(const BetaParams& params, double beta_threshold)
{
    return params.beta < beta_threshold ? TextureClass::HighTexture : TextureClass::LowTexture;
}

std::vector<ScatterRow> scatter_params(std::span<const IdentifiedFit> fits, double beta_threshold)
{
    std::vector<ScatterRow> rows;
    rows.reserve(fits.size());
    for (const auto& fit : fits)
        rows.push_back({fit.id, fit.params.alpha, fit.params.beta, classify_texture(fit.params, beta_threshold)});
    return rows;
}

} // namespace texdens
