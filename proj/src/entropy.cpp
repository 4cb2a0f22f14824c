#include "isv/entropy.hpp"

#include "isv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace isv {

namespace {

constexpr double kLabEpsilon = 216.0 / 24389.0; // (6/29)^3
constexpr double kLabKappa = 24389.0 / 27.0;

} // namespace

std::string_view to_string(EntropySource s)
{
    switch (s) {
    case EntropySource::Depth: return "depth";
    case EntropySource::Lightness: return "lightness";
    case EntropySource::DepthAndLightness: return "both";
    }
    return "unknown";
}

std::optional<EntropySource> parse_entropy_source(std::string_view s)
{
    if (s == "depth") return EntropySource::Depth;
    if (s == "lightness") return EntropySource::Lightness;
    if (s == "both" || s == "depth&lightness") return EntropySource::DepthAndLightness;
    return std::nullopt;
}

double lightness_from_luminance(double y)
{
    const double lightness = y > kLabEpsilon ? 116.0 * std::cbrt(y) - 16.0 : kLabKappa * y;
    return std::clamp(lightness, 0.0, 100.0);
}

double rgb_to_lightness(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    const std::uint8_t px[3] = {r, g, b};
    double y = 0.0;
    kernels::scalar::relative_luminance(px, std::span<double>(&y, 1));
    return lightness_from_luminance(y);
}

std::size_t lightness_bin(double lightness)
{
    const double scaled = std::floor(std::clamp(lightness, 0.0, 100.0) / 100.0 * 256.0);
    return scaled >= 255.0 ? 255 : static_cast<std::size_t>(scaled);
}

Histogram256 depth_histogram(const FrameBuffer& fb)
{
    std::vector<std::uint16_t> bins(fb.pixel_count());
    kernels::depth_bins(fb.depth(), bins);
    Histogram256 h;
    for (const std::uint16_t b : bins) {
        if (b != kernels::kBackgroundBin) {
            h.add(b);
        }
    }
    return h;
}

Histogram256 lightness_histogram(const FrameBuffer& fb)
{
    std::vector<double> lum(fb.pixel_count());
    kernels::relative_luminance(fb.rgb(), lum);
    Histogram256 h;
    for (std::size_t i = 0; i < lum.size(); ++i) {
        if (!fb.is_background(i)) {
            h.add(lightness_bin(lightness_from_luminance(lum[i])));
        }
    }
    return h;
}

double shannon(const Histogram256& h)
{
    if (h.total == 0) {
        return 0.0;
    }
    const double total = static_cast<double>(h.total);
    double entropy = 0.0;
    for (const std::uint64_t count : h.bins) {
        if (count == 0) {
            continue;
        }
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log2(p);
    }
    return std::max(entropy, 0.0);
}

double viewpoint_score(const FrameBuffer& fb, EntropySource source)
{
    switch (source) {
    case EntropySource::Depth: return shannon(depth_histogram(fb));
    case EntropySource::Lightness: return shannon(lightness_histogram(fb));
    case EntropySource::DepthAndLightness: {
        const double hd = shannon(depth_histogram(fb));
        const double hl = shannon(lightness_histogram(fb));
        return (hd / kMaxEntropyBits + hl / kMaxEntropyBits) / 2.0;
    }
    }
    return 0.0;
}

} // namespace isv
